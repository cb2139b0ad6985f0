#include "nml/core.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "nml/error.hpp"

namespace nml {

// ---------------------------------------------------------------------------
// AtomLanguage / ConsequenceTable
// ---------------------------------------------------------------------------

AtomLanguage::AtomLanguage(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw InputError("atom language must be non-empty");
  if (atoms_.size() > kMaxAtoms)
    throw InputError("atom language has " + std::to_string(atoms_.size()) +
                     " atoms; at most " + std::to_string(kMaxAtoms) + " are supported");
  std::unordered_set<std::string> seen;
  for (const auto& a : atoms_) {
    if (a.empty()) throw InputError("atom names must be non-empty");
    if (!seen.insert(a).second) throw InputError("duplicate atom name '" + a + "'");
  }
}

std::optional<std::size_t> AtomLanguage::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i] == name) return i;
  return std::nullopt;
}

std::vector<std::string> AtomLanguage::names(AtomSet s) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (s.contains(static_cast<unsigned>(i))) out.push_back(atoms_[i]);
  return out;
}

std::string AtomLanguage::key(AtomSet s) const {
  std::string out;
  for (const auto& n : names(s)) {
    if (!out.empty()) out += ',';
    out += n;
  }
  return out;
}

std::string AtomLanguage::render(AtomSet s) const { return "{" + key(s) + "}"; }

ConsequenceTable::ConsequenceTable(AtomLanguage language, std::vector<AtomSet> rows)
    : language_(std::move(language)), rows_(std::move(rows)) {
  if (rows_.size() != language_.subset_count())
    throw InputError("table has " + std::to_string(rows_.size()) + " rows, expected " +
                     std::to_string(language_.subset_count()));
  const AtomSet full = language_.full();
  for (std::size_t a = 0; a < rows_.size(); ++a)
    if (!rows_[a].subset_of(full))
      throw InputError("row " + std::to_string(a) + " mentions atoms outside the language");
}

ConsequenceTable ConsequenceTable::from_function(AtomLanguage language,
                                                 const std::function<AtomSet(AtomSet)>& fn) {
  std::vector<AtomSet> rows(language.subset_count());
  for (std::uint32_t a = 0; a < rows.size(); ++a) rows[a] = fn(AtomSet(a));
  return ConsequenceTable(std::move(language), std::move(rows));
}

ConsequenceTable ConsequenceTable::identity(AtomLanguage language) {
  return from_function(std::move(language), [](AtomSet a) { return a; });
}

ConsequenceTable ConsequenceTable::constant(AtomLanguage language, AtomSet value) {
  return from_function(std::move(language), [value](AtomSet) { return value; });
}

// ---------------------------------------------------------------------------
// Axioms
// ---------------------------------------------------------------------------

namespace {

std::uint32_t subset_count(const ConsequenceTable& t) {
  return static_cast<std::uint32_t>(t.language().subset_count());
}

std::string pair_detail(const ConsequenceTable& t, AtomSet a, AtomSet b) {
  const auto& L = t.language();
  return "A=" + L.render(a) + ", B=" + L.render(b) + ", C(A)=" + L.render(t(a)) +
         ", C(B)=" + L.render(t(b));
}

}  // namespace

PropertyReport check_inclusion(const ConsequenceTable& t) {
  for (std::uint32_t m = 0; m < subset_count(t); ++m) {
    AtomSet a(m);
    if (!a.subset_of(t(a)))
      return fails(property::kInclusion, {m},
                   "A=" + t.language().render(a) + " ⊄ C(A)=" + t.language().render(t(a)));
  }
  return holds(property::kInclusion);
}

// Pairs A ⊆ B ⊆ C(A) are enumerated as A ascending, then B over the
// supersets of A inside C(A). Only meaningful when A ⊆ C(A); otherwise
// there is no such B.
PropertyReport check_cumulativity(const ConsequenceTable& t) {
  for (std::uint32_t m = 0; m < subset_count(t); ++m) {
    AtomSet a(m), ca = t(a);
    if (!a.subset_of(ca)) continue;
    AtomSet witness;
    bool bad = any_between(a, ca, [&](AtomSet b) {
      if (t(b) != ca) { witness = b; return true; }
      return false;
    });
    if (bad)
      return fails(property::kCumulativity, {a.bits, witness.bits}, pair_detail(t, a, witness));
  }
  return holds(property::kCumulativity);
}

PropertyReport check_idempotence(const ConsequenceTable& t) {
  for (std::uint32_t m = 0; m < subset_count(t); ++m) {
    AtomSet a(m);
    if (t(t(a)) != t(a))
      return fails(property::kIdempotence, {m},
                   "A=" + t.language().render(a) + ", C(A)=" + t.language().render(t(a)) +
                       ", C(C(A))=" + t.language().render(t(t(a))));
  }
  return holds(property::kIdempotence);
}

PropertyReport check_cautious_monotonicity(const ConsequenceTable& t) {
  for (std::uint32_t m = 0; m < subset_count(t); ++m) {
    AtomSet a(m), ca = t(a);
    if (!a.subset_of(ca)) continue;
    AtomSet witness;
    bool bad = any_between(a, ca, [&](AtomSet b) {
      if (!ca.subset_of(t(b))) { witness = b; return true; }
      return false;
    });
    if (bad)
      return fails(property::kCautiousMonotonicity, {a.bits, witness.bits},
                   pair_detail(t, a, witness));
  }
  return holds(property::kCautiousMonotonicity);
}

// B only ranges over subsets of C(A), which is where the hypothesis can hold.
PropertyReport check_two_loop(const ConsequenceTable& t) {
  for (std::uint32_t m = 0; m < subset_count(t); ++m) {
    AtomSet a(m), ca = t(a);
    AtomSet witness;
    bool bad = any_submask(ca, [&](AtomSet b) {
      if (a.subset_of(t(b)) && t(b) != ca) { witness = b; return true; }
      return false;
    });
    if (bad) return fails(property::kTwoLoop, {a.bits, witness.bits}, pair_detail(t, a, witness));
  }
  return holds(property::kTwoLoop);
}

std::vector<PropertyReport> check_c_axioms(const ConsequenceTable& table) {
  return {check_inclusion(table), check_cumulativity(table), check_idempotence(table),
          check_cautious_monotonicity(table), check_two_loop(table)};
}

bool is_c_logic(const ConsequenceTable& table) {
  return check_inclusion(table).holds() && check_cumulativity(table).holds();
}

PropertyReport weak_compactness_report() {
  auto r = holds(property::kWeakCompactness, "finite language");
  r.detail = "holds (finite language): every subset is finite";
  return r;
}

// ---------------------------------------------------------------------------
// BoolMatrix
// ---------------------------------------------------------------------------

BoolMatrix::BoolMatrix(std::size_t n) : n_(n), stride_((n + 63) / 64), words_(n * stride_, 0) {}

void BoolMatrix::set(std::size_t i, std::size_t j, bool v) {
  auto& w = words_[i * stride_ + j / 64];
  const std::uint64_t bit = std::uint64_t{1} << (j % 64);
  w = v ? (w | bit) : (w & ~bit);
}

BoolMatrix BoolMatrix::compose(const BoolMatrix& other) const {
  BoolMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    std::uint64_t* dst = &out.words_[i * stride_];
    for (std::size_t j = 0; j < n_; ++j) {
      if (!get(i, j)) continue;
      const std::uint64_t* src = &other.words_[j * stride_];
      for (std::size_t w = 0; w < stride_; ++w) dst[w] |= src[w];
    }
  }
  return out;
}

BoolMatrix BoolMatrix::identity(std::size_t n) {
  BoolMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, i);
  return out;
}

BoolMatrix BoolMatrix::transitive_closure() const {
  BoolMatrix out = *this;
  for (std::size_t k = 0; k < n_; ++k) {
    const std::uint64_t* src = &out.words_[k * stride_];
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == k || !out.get(i, k)) continue;
      std::uint64_t* dst = &out.words_[i * stride_];
      for (std::size_t w = 0; w < stride_; ++w) dst[w] |= src[w];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Loop
// ---------------------------------------------------------------------------

namespace {

/// reach[j](x, y): y is reachable from x in exactly j edges.
std::vector<BoolMatrix> exact_reach(const BoolMatrix& edges, std::size_t max_len) {
  std::vector<BoolMatrix> reach;
  reach.push_back(BoolMatrix::identity(edges.size()));
  for (std::size_t j = 1; j <= max_len; ++j) reach.push_back(reach.back().compose(edges));
  return reach;
}

/// A closed walk v_0 -> v_1 -> ... -> v_{k-1} -> v_0 of exactly k edges
/// whose first edge joins distinct vertices, if one exists.
std::optional<std::vector<std::size_t>> closed_walk_with_strict_edge(
    const BoolMatrix& edges, const std::vector<BoolMatrix>& reach, std::size_t k) {
  const std::size_t n = edges.size();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t w = 0; w < n; ++w) {
      if (u == w || !edges.get(u, w) || !reach[k - 1].get(w, u)) continue;
      std::vector<std::size_t> walk{u, w};
      std::size_t cur = w;
      for (std::size_t left = k - 1; left > 1; --left) {
        for (std::size_t x = 0; x < n; ++x) {
          if (edges.get(cur, x) && reach[left - 1].get(x, u)) {
            walk.push_back(x);
            cur = x;
            break;
          }
        }
      }
      return walk;
    }
  }
  return std::nullopt;
}

/// Some closed walk of exactly k edges visits two distinct vertices.
bool closed_walk_visits_distinct(const std::vector<BoolMatrix>& reach, std::size_t k) {
  const std::size_t n = reach[0].size();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t w = 0; w < n; ++w) {
      if (u == w) continue;
      for (std::size_t j = 1; j < k; ++j)
        if (reach[j].get(u, w) && reach[k - j].get(w, u)) return true;
    }
  return false;
}

}  // namespace

PropertyReport check_loop(const ConsequenceTable& t, int max_n) {
  if (max_n < 2) throw ContractError("check_loop: max_n must be at least 2");
  const std::uint32_t count = subset_count(t);

  std::vector<AtomSet> values(t.rows().begin(), t.rows().end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::unordered_map<AtomSet, std::size_t> index;
  for (std::size_t i = 0; i < values.size(); ++i) index.emplace(values[i], i);

  BoolMatrix edges(values.size());
  for (std::uint32_t m = 0; m < count; ++m) {
    const std::size_t u = index.at(t(AtomSet(m)));
    for (std::size_t w = 0; w < values.size(); ++w)
      if (AtomSet(m).subset_of(values[w])) edges.set(u, w);
  }

  const auto k_max = static_cast<std::size_t>(max_n);
  const auto reach = exact_reach(edges, k_max);

  PropertyReport report = holds(property::kLoop, "exhaustive, cycle lengths 2.." + std::to_string(max_n));
  report.notes.push_back("cycle length 2 coincides with 2-Loop");
  std::optional<std::size_t> consecutive_fail, all_pairs_fail;
  std::optional<std::vector<std::size_t>> walk;
  for (std::size_t k = 2; k <= k_max; ++k) {
    if (!consecutive_fail) {
      walk = closed_walk_with_strict_edge(edges, reach, k);
      if (walk) consecutive_fail = k;
    }
    if (!all_pairs_fail && closed_walk_visits_distinct(reach, k)) all_pairs_fail = k;
  }
  auto form = [](const char* name, const std::optional<std::size_t>& k) {
    return std::string(name) + (k ? ": fails at cycle length " + std::to_string(*k) : ": holds");
  };
  report.notes.push_back(form("consecutive form C(A_0)=C(A_1)", consecutive_fail));
  report.notes.push_back(form("all-pairs form C(A_i)=C(A_j)", all_pairs_fail));
  if (!walk) {
    if (all_pairs_fail) {
      report.verdict = Verdict::Fails;
      report.detail = "all-pairs form fails without a consecutive witness";
    }
    return report;
  }

  // Realize the value walk as sets: A_i with C(A_i) = v_i and A_i ⊆ v_{i+1}.
  const auto& v = *walk;
  std::vector<std::uint32_t> cycle;
  std::string detail;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const AtomSet here = values[v[i]], next = values[v[(i + 1) % v.size()]];
    for (std::uint32_t m = 0; m < count; ++m) {
      if (t(AtomSet(m)) == here && AtomSet(m).subset_of(next)) {
        cycle.push_back(m);
        break;
      }
    }
    if (i) detail += ", ";
    detail += "A_" + std::to_string(i) + "=" + t.language().render(AtomSet(cycle.back())) +
              " (C=" + t.language().render(here) + ")";
  }
  report.verdict = Verdict::Fails;
  report.witness = std::move(cycle);
  report.detail = std::move(detail);
  return report;
}

bool witness_violates(const ConsequenceTable& t, const PropertyReport& r) {
  if (r.holds()) return false;
  const auto& w = r.witness;
  auto at = [&](std::size_t i) { return AtomSet(w.at(i)); };
  const std::string& p = r.property;
  if (p == property::kInclusion) return !at(0).subset_of(t(at(0)));
  if (p == property::kIdempotence) return t(t(at(0))) != t(at(0));
  if (p == property::kCumulativity || p == property::kCautiousMonotonicity) {
    AtomSet a = at(0), b = at(1);
    if (!(a.subset_of(b) && b.subset_of(t(a)))) return false;
    return p == property::kCumulativity ? t(a) != t(b) : !t(a).subset_of(t(b));
  }
  if (p == property::kTwoLoop) {
    AtomSet a = at(0), b = at(1);
    return a.subset_of(t(b)) && b.subset_of(t(a)) && t(a) != t(b);
  }
  if (p == property::kLoop) {
    if (w.size() < 2) return false;
    bool differ = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!at(i).subset_of(t(at((i + 1) % w.size())))) return false;
      differ = differ || t(at(i)) != t(at(0));
    }
    return differ;
  }
  // Cn laws: recompute Cn from the theory list
  const bool cn_law = p == property::kCnBounds || p == property::kCnAbsorption || p == property::kCnMonotone ||
                      p == property::kCnIdempotent || p == property::kCnInconsistency;
  if (!cn_law) return false;
  const CnOperator c(t);
  const AtomSet a = at(0);
  if (p == property::kCnBounds) return !a.subset_of(c(a)) || !c(a).subset_of(t(a));
  if (p == property::kCnAbsorption) return c(t(a)) != t(a) || t(c(a)) != t(a);
  if (p == property::kCnIdempotent) return c(c(a)) != c(a);
  if (p == property::kCnInconsistency) return (t(a) == t.full()) != (c(a) == t.full());
  const AtomSet b = at(1);
  return a.subset_of(b) && !c(a).subset_of(c(b));
}

// ---------------------------------------------------------------------------
// Consistency, theories, Cn
// ---------------------------------------------------------------------------

bool is_consistent(const ConsequenceTable& table, AtomSet a) { return table(a) != table.full(); }

std::vector<AtomSet> theories(const ConsequenceTable& t, bool consistent_only) {
  std::vector<AtomSet> out;
  for (std::uint32_t m = 0; m < subset_count(t); ++m) {
    AtomSet a(m);
    if (t(a) == a && !(consistent_only && a == t.full())) out.push_back(a);
  }
  return out;
}

// Superset-meet over the subset lattice: values[A] = ⋂ {T theory : T ⊇ A}.
CnOperator::CnOperator(const ConsequenceTable& t) : values_(t.language().subset_count()) {
  const AtomSet full = t.full();
  for (std::uint32_t m = 0; m < values_.size(); ++m)
    values_[m] = t(AtomSet(m)) == AtomSet(m) ? AtomSet(m) : full;
  const auto n = static_cast<unsigned>(t.atom_count());
  for (unsigned i = 0; i < n; ++i) {
    const std::uint32_t bit = 1u << i;
    for (std::uint32_t m = 0; m < values_.size(); ++m)
      if (!(m & bit)) values_[m] &= values_[m | bit];
  }
}

AtomSet cn(const ConsequenceTable& table, AtomSet a) { return CnOperator(table)(a); }

std::vector<PropertyReport> check_cn_laws(const ConsequenceTable& t) {
  const CnOperator cn_op(t);
  const std::uint32_t count = subset_count(t);
  const AtomLanguage& lang = t.language();
  const AtomSet full = t.full();
  std::vector<PropertyReport> out;

  out.push_back([&] {
    for (std::uint32_t m = 0; m < count; ++m) {
      const AtomSet a(m);
      if (!a.subset_of(cn_op(a)) || !cn_op(a).subset_of(t(a)))
        return fails(property::kCnBounds, {m},
                     "A=" + lang.render(a) + " Cn(A)=" + lang.render(cn_op(a)) + " C(A)=" + lang.render(t(a)));
    }
    return holds(property::kCnBounds);
  }());

  out.push_back([&] {
    for (std::uint32_t m = 0; m < count; ++m) {
      const AtomSet a(m);
      if (cn_op(t(a)) != t(a) || t(cn_op(a)) != t(a))
        return fails(property::kCnAbsorption, {m},
                     "A=" + lang.render(a) + " C(A)=" + lang.render(t(a)) + " Cn(C(A))=" +
                         lang.render(cn_op(t(a))) + " C(Cn(A))=" + lang.render(t(cn_op(a))));
    }
    return holds(property::kCnAbsorption);
  }());

  out.push_back([&] {
    for (std::uint32_t mb = 0; mb < count; ++mb) {
      const AtomSet b(mb);
      std::optional<AtomSet> bad;
      any_submask(b, [&](AtomSet a) {
        if (cn_op(a).subset_of(cn_op(b))) return false;
        bad = a;
        return true;
      });
      if (bad)
        return fails(property::kCnMonotone, {bad->bits, mb},
                     "A=" + lang.render(*bad) + " ⊆ B=" + lang.render(b) + " but Cn(A)=" + lang.render(cn_op(*bad)) +
                         " ⊄ Cn(B)=" + lang.render(cn_op(b)));
    }
    return holds(property::kCnMonotone);
  }());

  out.push_back([&] {
    for (std::uint32_t m = 0; m < count; ++m) {
      const AtomSet a(m);
      if (cn_op(cn_op(a)) != cn_op(a))
        return fails(property::kCnIdempotent, {m}, "A=" + lang.render(a) + " Cn(A)=" + lang.render(cn_op(a)));
    }
    return holds(property::kCnIdempotent);
  }());

  out.push_back([&] {
    for (std::uint32_t m = 0; m < count; ++m) {
      const AtomSet a(m);
      if ((t(a) == full) != (cn_op(a) == full))
        return fails(property::kCnInconsistency, {m},
                     "A=" + lang.render(a) + " C(A)=" + lang.render(t(a)) + " Cn(A)=" + lang.render(cn_op(a)));
    }
    return holds(property::kCnInconsistency);
  }());

  return out;
}

std::vector<AtomSet> maximal_consistent_sets(const ConsequenceTable& t) {
  const std::uint32_t count = subset_count(t);
  std::vector<char> consistent(count), has_consistent_superset(count);
  for (std::uint32_t m = 0; m < count; ++m)
    consistent[m] = has_consistent_superset[m] = is_consistent(t, AtomSet(m));
  const auto n = static_cast<unsigned>(t.atom_count());
  for (unsigned i = 0; i < n; ++i)
    for (std::uint32_t m = 0; m < count; ++m)
      if (!(m & (1u << i))) has_consistent_superset[m] |= has_consistent_superset[m | (1u << i)];

  std::vector<AtomSet> out;
  for (std::uint32_t m = 0; m < count; ++m) {
    if (!consistent[m]) continue;
    bool strict = false;
    for (unsigned i = 0; i < n && !strict; ++i)
      if (!(m & (1u << i))) strict = has_consistent_superset[m | (1u << i)];
    if (!strict) out.push_back(AtomSet(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Theory order
// ---------------------------------------------------------------------------

TheoryPoset theory_order(const ConsequenceTable& t) {
  TheoryPoset p;
  p.theories = theories(t);
  const std::size_t n = p.theories.size();
  std::unordered_map<AtomSet, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(p.theories[i], i);

  p.leq = BoolMatrix(n);
  for (std::uint32_t m = 0; m < subset_count(t); ++m) {
    auto it = index.find(t(AtomSet(m)));
    if (it == index.end()) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (AtomSet(m).subset_of(p.theories[j])) p.leq.set(it->second, j);
  }
  p.lt = p.leq;
  for (std::size_t i = 0; i < n; ++i) p.lt.set(i, i, false);
  p.lt_plus = p.lt.transitive_closure();
  return p;
}

bool TheoryPoset::leq_reflexive() const {
  for (std::size_t i = 0; i < theories.size(); ++i)
    if (!leq.get(i, i)) return false;
  return true;
}

bool TheoryPoset::lt_plus_irreflexive() const {
  for (std::size_t i = 0; i < theories.size(); ++i)
    if (lt_plus.get(i, i)) return false;
  return true;
}

std::optional<std::vector<std::size_t>> TheoryPoset::nontrivial_leq_cycle(std::size_t max_len) const {
  if (max_len < 2 || theories.empty()) return std::nullopt;
  const auto reach = exact_reach(leq, max_len);
  for (std::size_t k = 2; k <= max_len; ++k)
    if (auto walk = closed_walk_with_strict_edge(leq, reach, k)) return walk;
  return std::nullopt;
}

}  // namespace nml
