#include <cmath>

#include "doctest.h"
#include "nml/builtins.hpp"
#include "nml/corpus.hpp"
#include "nml/error.hpp"
#include "nml/quantum.hpp"

using namespace nml;
using namespace nml::quantum;

namespace {

constexpr double kEps = 1e-9;

Vec v2(double x, double y) { return Vec{{x, y}}; }
Vec v3(double x, double y, double z) { return Vec{{x, y, z}}; }

// Classical Gram–Schmidt with a fixed drop threshold; the reference
// projector for orthonormalize.
Mat gram_schmidt_projector(const std::vector<Vec>& vs, std::size_t dim) {
  std::vector<Vec> q;
  for (Vec v : vs) {
    for (const auto& u : q) v -= u.dot(v) * u;
    if (v.norm() > 1e-8) q.push_back(v / v.norm());
  }
  Mat p = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& u : q) p += u * u.transpose();
  return p;
}

bool near(const Vec& a, const Vec& b) { return (a - b).norm() < kEps; }

}  // namespace

TEST_CASE("orthonormalize ranks and spans") {
  CHECK(orthonormalize({v2(1, 0)}, 2).rank() == 1);
  CHECK(orthonormalize({v2(1, 1), v2(2, 2)}, 2).rank() == 1);
  CHECK(orthonormalize({v2(1, 0), v2(1, 1)}, 2).rank() == 2);
  CHECK(orthonormalize({}, 3).rank() == 0);
  CHECK_THROWS_AS(orthonormalize({v3(1, 0, 0)}, 2), InputError);

  corpus::Rng rng(1);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 2 + i % 3;
    std::vector<Vec> vs;
    for (std::size_t j = 0; j < 1 + i % d; ++j) {
      Vec v(static_cast<Eigen::Index>(d));
      for (Eigen::Index e = 0; e < v.size(); ++e) v[e] = normal(rng);
      vs.push_back(v);
    }
    const auto s = orthonormalize(vs, d);
    CHECK((s.projector() - gram_schmidt_projector(vs, d)).norm() < 1e-9);
    const Mat gram = s.basis().transpose() * s.basis();
    CHECK((gram - Mat::Identity(gram.rows(), gram.cols())).norm() < 1e-10);
  }
}

TEST_CASE("projection") {
  const auto a = orthonormalize({v2(1, 0)}, 2);
  CHECK(near(project(a, v2(1, 2)), v2(1, 0)));
  CHECK(near(project(Subspace::zero(2), v2(1, 2)), v2(0, 0)));
  CHECK(near(project(Subspace::full(2), v2(1, 2)), v2(1, 2)));
  CHECK(std::abs(distance(a, v2(1, 2)) - 2.0) < kEps);
}

TEST_CASE("intersection") {
  const auto a = orthonormalize({v2(1, 0)}, 2), b = orthonormalize({v2(1, 1)}, 2);
  CHECK(intersect({a, b}, 2).rank() == 0);
  CHECK(intersect({}, 2).rank() == 2);
  const auto p = orthonormalize({v3(1, 0, 0), v3(0, 1, 0)}, 3);
  const auto q = orthonormalize({v3(0, 1, 0), v3(0, 0, 1)}, 3);
  const auto line = intersect({p, q}, 3);
  REQUIRE(line.rank() == 1);
  CHECK(same_span(line, orthonormalize({v3(0, 1, 0)}, 3), kEps));
}

TEST_CASE("membership and orthocomplement") {
  const auto b = orthonormalize({v2(1, 1)}, 2);
  CHECK_FALSE(member(b, v2(1, 0), kEps));
  CHECK(std::abs((v2(1, 0) - project(b, v2(1, 0))).norm() - std::sqrt(0.5)) < kEps);
  CHECK(member(b, v2(0, 0), kEps));
  CHECK(member(intersect({}, 2), v2(3, 4), kEps));

  CHECK(same_span(orthocomplement(b), orthonormalize({v2(1, -1)}, 2), kEps));
  CHECK(orthocomplement(Subspace::zero(2)).rank() == 2);
  CHECK(same_span(orthocomplement(orthocomplement(b)), b, kEps));
  CHECK(closed_span(b, orthocomplement(b)).rank() == 2);
}

TEST_CASE("instance validation") {
  const auto a = orthonormalize({v2(1, 0)}, 2);
  CHECK_THROWS_AS(QuantumInstance(2, v2(0, 0), {"a"}, {a}), InputError);
  CHECK_THROWS_AS(QuantumInstance(3, v3(1, 0, 0), {"a"}, {a}), InputError);
  CHECK_THROWS_AS(QuantumInstance(9, Vec::Ones(9), {"a"}, {Subspace::full(9)}), InputError);
  CHECK_THROWS_AS(QuantumInstance(2, v2(1, 0), {"a"}, {a}, 0.0), InputError);
}

TEST_CASE("generic lines consequence") {
  const auto q = generic_lines_instance();
  CHECK(quantum_consequence(q, AtomSet(0)) == AtomSet(0b100));
  CHECK(quantum_consequence(q, AtomSet(0b001)) == AtomSet(0b001));
  CHECK(quantum_consequence(q, AtomSet(0b011)) == AtomSet(0b111));
  const auto t = quantum_table(q);
  CHECK(is_c_logic(t));
  CHECK(check_loop(t, 4).holds());
  CHECK(theory_order(t).lt_plus_irreflexive());
  CHECK(check_bca(q).holds());
  CHECK(check_conjunction_rule(q).holds());
}

TEST_CASE("single subspace containing h is monotone") {
  const QuantumInstance q(2, v2(1, 0), {"a"}, {orthonormalize({v2(1, 0)}, 2)});
  CHECK(quantum_consequence(q, AtomSet(0)) == AtomSet(1));
  CHECK(quantum_consequence(q, AtomSet(1)) == AtomSet(1));
}

TEST_CASE("negation by orthocomplement breaks ¬-R2 on generic lines") {
  const auto demo = negation_failure_demo(generic_lines_instance(), 0, 1);
  CHECK(demo.c_a_not_b_is_full);
  CHECK_FALSE(demo.b_in_c_a);
  CHECK(demo.neg_r1.holds());
  CHECK_FALSE(demo.neg_r2.holds());
  CHECK(demo.meet_norm < kEps);
  CHECK(demo.b_residual / kDefaultTolerance >= 1e7);
  CHECK(builtins::negation_example().as_expected());
}

TEST_CASE("negation demo with a = b and with an orthogonal pair") {
  const auto same = negation_failure_demo(generic_lines_instance(), 0, 0);
  CHECK(same.c_a_not_b_is_full);
  CHECK(same.neg_r2.holds());

  const QuantumInstance q(2, v2(1, 0), {"a", "b"},
                          {orthonormalize({v2(1, 0)}, 2), orthonormalize({v2(0, 1)}, 2)});
  const auto orth = negation_failure_demo(q, 0, 1);
  CHECK_FALSE(orth.c_a_not_b_is_full);
  CHECK(orth.neg_r2.holds());
}

TEST_CASE("closed linear span as disjunction breaks ∨-R2 and distributivity") {
  const auto demo = disjunction_span_demo(generic_lines_instance(), 0, 1, 2);
  CHECK_FALSE(demo.or_r2.holds());
  CHECK_FALSE(demo.distributivity.holds());
}

TEST_CASE("property: random instances induce L-logics and satisfy BCA") {
  corpus::Rng rng(99);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int i = 0; i < 40; ++i) {
      const auto q = corpus::random_quantum_instance(corpus::default_language(n), rng);
      CHECK(q.dim() >= 2);
      CHECK(q.dim() <= 4);
      const auto t = quantum_table(q);
      CHECK(is_c_logic(t));
      CHECK(check_loop(t, 4).holds());
      CHECK(check_bca(q).holds());
      CHECK(check_conjunction_rule(q).holds());

      const Vec& h = q.state();
      for (std::size_t a = 0; a < n; ++a) {
        const auto& s = q.subspace(a);
        const Vec p = project(s, h);
        CHECK((project(s, p) - p).norm() < kEps);
        CHECK((s.basis().transpose() * (h - p)).norm() < kEps);
        CHECK(p.norm() <= h.norm() + kEps);
      }
      const auto meet = q.meet(AtomSet::full(static_cast<unsigned>(n)));
      for (Eigen::Index c = 0; c < meet.basis().cols(); ++c)
        for (std::size_t a = 0; a < n; ++a) CHECK(member(q.subspace(a), meet.basis().col(c), 1e-9));
    }
}
