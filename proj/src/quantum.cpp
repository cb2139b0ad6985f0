#include "nml/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nml/error.hpp"

namespace nml::quantum {

namespace {

std::size_t numerical_rank(const Eigen::VectorXd& singular) {
  if (singular.size() == 0) return 0;
  const double largest = singular.maxCoeff();
  if (largest <= 0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < singular.size(); ++i)
    if (singular(i) > kRankThreshold * largest) ++r;
  return r;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

Subspace Subspace::zero(std::size_t dim) { return Subspace(Mat(dim, 0)); }
Subspace Subspace::full(std::size_t dim) { return Subspace(Mat::Identity(dim, dim)); }
Subspace Subspace::from_orthonormal(Mat onb) { return Subspace(std::move(onb)); }

Subspace orthonormalize(const std::vector<Vec>& vectors, std::size_t dim) {
  if (vectors.empty()) return Subspace::zero(dim);
  Mat stacked(dim, vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (static_cast<std::size_t>(vectors[j].size()) != dim)
      throw InputError("vector of dimension " + std::to_string(vectors[j].size()) +
                       " in a space of dimension " + std::to_string(dim));
    stacked.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeThinU);
  const auto r = static_cast<Eigen::Index>(numerical_rank(svd.singularValues()));
  return Subspace::from_orthonormal(svd.matrixU().leftCols(r));
}

Vec project(const Subspace& s, const Vec& v) {
  if (s.rank() == 0) return Vec::Zero(v.size());
  return s.basis() * (s.basis().transpose() * v);
}

double distance(const Subspace& s, const Vec& v) { return (v - project(s, v)).norm(); }

Subspace intersect(const std::vector<Subspace>& spaces, std::size_t dim) {
  if (spaces.empty()) return Subspace::full(dim);
  const auto d = static_cast<Eigen::Index>(dim);
  Mat stacked(d * static_cast<Eigen::Index>(spaces.size()), d);
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    if (spaces[i].dim() != dim) throw InputError("intersect: subspaces of different dimensions");
    stacked.middleRows(static_cast<Eigen::Index>(i) * d, d) = Mat::Identity(d, d) - spaces[i].projector();
  }
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() ? sv.maxCoeff() : 0.0);
  Eigen::Index kernel_start = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankThreshold * scale) kernel_start = i + 1;
  return Subspace::from_orthonormal(svd.matrixV().rightCols(d - kernel_start));
}

bool member(const Subspace& s, const Vec& v, double tol) {
  return distance(s, v) <= tol * std::max(1.0, v.norm());
}

Subspace orthocomplement(const Subspace& s) {
  const auto d = static_cast<Eigen::Index>(s.dim());
  if (s.rank() == 0) return Subspace::full(s.dim());
  Eigen::JacobiSVD<Mat> svd(s.basis(), Eigen::ComputeFullU);
  return Subspace::from_orthonormal(svd.matrixU().rightCols(d - static_cast<Eigen::Index>(s.rank())));
}

Subspace closed_span(const Subspace& a, const Subspace& b) {
  std::vector<Vec> cols;
  for (Eigen::Index j = 0; j < a.basis().cols(); ++j) cols.emplace_back(a.basis().col(j));
  for (Eigen::Index j = 0; j < b.basis().cols(); ++j) cols.emplace_back(b.basis().col(j));
  return orthonormalize(cols, a.dim());
}

bool same_span(const Subspace& a, const Subspace& b, double tol) {
  return a.dim() == b.dim() && a.rank() == b.rank() &&
         (a.projector() - b.projector()).norm() <= tol;
}

// ---------------------------------------------------------------------------

namespace {

AtomLanguage checked_language(std::vector<std::string> names) {
  if (names.empty()) throw InputError("quantum instance needs at least one subspace");
  return AtomLanguage(std::move(names));
}

}  // namespace

QuantumInstance::QuantumInstance(std::size_t dim, Vec state, std::vector<std::string> names,
                                 std::vector<Subspace> subspaces, double tolerance)
    : dim_(dim),
      state_(std::move(state)),
      language_(checked_language(std::move(names))),
      subspaces_(std::move(subspaces)),
      tolerance_(tolerance) {
  if (dim_ == 0 || dim_ > kMaxDim)
    throw InputError("dimension must be between 1 and " + std::to_string(kMaxDim));
  if (!(tolerance_ > 0) || !std::isfinite(tolerance_)) throw InputError("tolerance must be positive");
  if (static_cast<std::size_t>(state_.size()) != dim_)
    throw InputError("state has dimension " + std::to_string(state_.size()) + ", expected " +
                     std::to_string(dim_));
  if (!state_.allFinite()) throw InputError("state has non-finite entries");
  if (state_.norm() <= tolerance_) throw InputError("state vector must be nonzero");
  if (subspaces_.size() != language_.size())
    throw InputError("subspace count does not match atom count");
  for (std::size_t i = 0; i < subspaces_.size(); ++i)
    if (subspaces_[i].dim() != dim_)
      throw InputError("subspace '" + language_.name(i) + "' has the wrong dimension");
}

Subspace QuantumInstance::meet(AtomSet a) const {
  std::vector<Subspace> parts;
  for (std::size_t i = 0; i < subspaces_.size(); ++i)
    if (a.contains(static_cast<unsigned>(i))) parts.push_back(subspaces_[i]);
  return intersect(parts, dim_);
}

QuantumInstance QuantumInstance::with_atom(const std::string& name, Subspace s) const {
  auto names = language_.atoms();
  names.push_back(name);
  auto spaces = subspaces_;
  spaces.push_back(std::move(s));
  return QuantumInstance(dim_, state_, std::move(names), std::move(spaces), tolerance_);
}

QuantumInstance QuantumInstance::with_tolerance(double tol) const {
  return QuantumInstance(dim_, state_, language_.atoms(), subspaces_, tol);
}

AtomSet quantum_consequence(const QuantumInstance& q, AtomSet a) {
  const Vec p = project(q.meet(a), q.state());
  AtomSet out;
  for (std::size_t b = 0; b < q.atom_count(); ++b)
    if (member(q.subspace(b), p, q.tolerance())) out |= AtomSet::singleton(static_cast<unsigned>(b));
  return out;
}

ConsequenceTable quantum_table(const QuantumInstance& q) {
  return ConsequenceTable::from_function(q.language(),
                                         [&](AtomSet a) { return quantum_consequence(q, a); });
}

PropertyReport check_bca(const QuantumInstance& q) {
  const std::size_t count = q.language().subset_count();
  std::vector<Vec> proj(count);
  std::vector<double> dist(count);
  for (std::uint32_t m = 0; m < count; ++m) {
    proj[m] = project(q.meet(AtomSet(m)), q.state());
    dist[m] = (q.state() - proj[m]).norm();
  }
  const auto table = quantum_table(q);
  const double tol = q.tolerance();
  const double scale = std::max(1.0, q.state().norm());
  double worst_gap = 0, worst_dist = 0;
  for (std::uint32_t a = 0; a < count; ++a) {
    PropertyReport bad;
    bool found = any_submask(table(AtomSet(a)), [&](AtomSet b) {
      const double gap = (proj[a] - proj[a | b.bits]).norm();
      const double slack = dist[b.bits] - dist[a];
      worst_gap = std::max(worst_gap, gap);
      worst_dist = std::max(worst_dist, slack);
      if (gap <= tol * scale && slack <= tol * scale) return false;
      bad = fails(property::kBca, {a, b.bits},
                  "A=" + q.language().render(AtomSet(a)) + ", B=" + q.language().render(b) +
                      ": ‖A*_p(h) - (A*∩B*)_p(h)‖=" + fmt(gap) + ", d(h,B*) - d(h,A*)=" + fmt(slack));
      return true;
    });
    if (found) return bad;
  }
  auto r = holds(property::kBca);
  r.notes.push_back("max projection gap " + fmt(worst_gap));
  r.notes.push_back("max distance excess " + fmt(worst_dist));
  return r;
}

PropertyReport check_conjunction_rule(const QuantumInstance& q) {
  const std::size_t n = q.atom_count();
  const std::uint32_t count = static_cast<std::uint32_t>(q.language().subset_count());
  const AtomSet original = q.language().full();
  for (std::uint32_t a = 1; a < count; ++a) {
    const auto extended = q.with_atom("&" + q.language().key(AtomSet(a)), q.meet(AtomSet(a)));
    const AtomSet conj = AtomSet::singleton(static_cast<unsigned>(n));
    for (std::uint32_t b = 0; b < count; ++b) {
      const AtomSet lhs = quantum_consequence(extended, AtomSet(a | b)) & original;
      const AtomSet rhs = quantum_consequence(extended, conj | AtomSet(b)) & original;
      if (lhs != rhs)
        return fails(property::kConjunctionRule, {a, b},
                     "A=" + q.language().render(AtomSet(a)) + ", B=" + q.language().render(AtomSet(b)) +
                         ": C(A,B)=" + q.language().render(lhs) + ", C(∧A,B)=" + q.language().render(rhs));
    }
  }
  return holds(property::kConjunctionRule);
}

NegationDemo negation_failure_demo(const QuantumInstance& q, std::size_t a, std::size_t b) {
  if (a >= q.atom_count() || b >= q.atom_count()) throw InputError("negation demo: atom index out of range");
  const auto& names = q.language();
  const std::string neg_name = "!" + names.name(b);
  NegationDemo demo{q.with_atom(neg_name, orthocomplement(q.subspace(b))), {}, {}, false, false, 0, 0, {}, {}};
  const auto& ext = demo.extended;
  const auto A = AtomSet::singleton(static_cast<unsigned>(a));
  const auto B = AtomSet::singleton(static_cast<unsigned>(b));
  const auto notB = AtomSet::singleton(static_cast<unsigned>(q.atom_count()));
  const AtomSet full = ext.language().full();

  demo.c_a_not_b = quantum_consequence(ext, A | notB);
  demo.c_a = quantum_consequence(ext, A);
  demo.c_a_not_b_is_full = demo.c_a_not_b == full;
  demo.b_in_c_a = B.subset_of(demo.c_a);
  demo.meet_norm = project(ext.meet(A | notB), ext.state()).norm();
  demo.b_residual = distance(q.subspace(b), project(q.subspace(a), q.state()));

  demo.neg_r1 = holds(property::kNegR1, "every A over the extended language, negated atom " + names.name(b));
  for (std::uint32_t m = 0; m < ext.language().subset_count(); ++m) {
    const AtomSet ctx(m);
    const AtomSet c = quantum_consequence(ext, ctx | B | notB);
    if (c != full) {
      demo.neg_r1 = fails(property::kNegR1, {m, static_cast<std::uint32_t>(b)},
                          "A=" + ext.language().render(ctx) + ": C(A," + names.name(b) + "," + neg_name +
                              ")=" + ext.language().render(c));
      break;
    }
  }

  const std::string instance = "C(" + names.name(a) + "," + neg_name + ") = L ⇒ " + names.name(b) +
                               " ∈ C(" + names.name(a) + ")";
  if (demo.c_a_not_b_is_full && !demo.b_in_c_a) {
    demo.neg_r2 = fails(property::kNegR2, {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)},
                        instance + ": C(" + names.name(a) + "," + neg_name + ")=L but C(" + names.name(a) +
                            ")=" + ext.language().render(demo.c_a) + "; residual of " + names.name(a) +
                            "_p(h) from " + names.name(b) + " is " + fmt(demo.b_residual),
                        "instance");
  } else {
    demo.neg_r2 = holds(property::kNegR2, "instance");
    demo.neg_r2.detail = instance;
  }
  return demo;
}

DisjunctionDemo disjunction_span_demo(const QuantumInstance& q, std::size_t a, std::size_t x,
                                      std::size_t y) {
  const auto& L = q.language();
  const std::size_t n = q.atom_count();
  const std::string xs = L.name(x), ys = L.name(y), as = L.name(a);
  const Subspace ax = intersect({q.subspace(a), q.subspace(x)}, q.dim());
  const Subspace ay = intersect({q.subspace(a), q.subspace(y)}, q.dim());
  auto ext = q.with_atom("(" + xs + "|" + ys + ")", closed_span(q.subspace(x), q.subspace(y)))
                 .with_atom("(" + as + "&" + xs + ")", ax)
                 .with_atom("(" + as + "&" + ys + ")", ay)
                 .with_atom("((" + as + "&" + xs + ")|(" + as + "&" + ys + "))", closed_span(ax, ay));
  auto atom = [](std::size_t i) { return AtomSet::singleton(static_cast<unsigned>(i)); };
  const AtomSet or_xy = atom(n), distributed = atom(n + 3);

  DisjunctionDemo demo{ext, {}, {}, {}, {}, {}};
  demo.c_a_x = quantum_consequence(ext, atom(a) | atom(x));
  demo.c_a_y = quantum_consequence(ext, atom(a) | atom(y));
  demo.c_a_x_or_y = quantum_consequence(ext, atom(a) | or_xy);
  const auto& EL = ext.language();

  const AtomSet both = demo.c_a_x & demo.c_a_y;
  if (both.subset_of(demo.c_a_x_or_y)) {
    demo.or_r2 = holds(property::kOrR2, "instance");
  } else {
    const AtomSet missing = both - demo.c_a_x_or_y;
    unsigned first = 0;
    while (!missing.contains(first)) ++first;
    demo.or_r2 = fails(property::kOrR2, {atom(a).bits, atom(x).bits, atom(y).bits, first},
                       EL.name(first) + " ∈ C(" + as + "," + xs + ") ∩ C(" + as + "," + ys + ") but ∉ C(" + as +
                           "," + EL.name(n) + ")=" + EL.render(demo.c_a_x_or_y),
                       "instance");
  }

  const AtomSet lhs = quantum_consequence(ext, atom(a) | or_xy);
  const AtomSet rhs = quantum_consequence(ext, distributed);
  if (lhs == rhs) {
    demo.distributivity = holds(property::kDistributivity, "instance");
  } else {
    demo.distributivity = fails(property::kDistributivity, {lhs.bits, rhs.bits},
                                "C(" + as + "∧" + EL.name(n) + ")=" + EL.render(lhs) + " but C(" +
                                    EL.name(n + 3) + ")=" + EL.render(rhs),
                                "instance");
  }
  return demo;
}

QuantumInstance generic_lines_instance() {
  auto line = [](double x, double y) { return orthonormalize({Vec{{x, y}}}, 2); };
  return QuantumInstance(2, Vec{{1.0, 2.0}}, {"a", "b", "c"}, {line(1, 0), line(1, 1), line(1, 2)});
}

}  // namespace nml::quantum
