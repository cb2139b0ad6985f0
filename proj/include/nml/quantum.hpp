#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nml/core.hpp"
#include "nml/report.hpp"

namespace nml::quantum {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr std::size_t kMaxDim = 8;
/// Singular values below this fraction of the largest one count as zero.
inline constexpr double kRankThreshold = 1e-10;
inline constexpr double kDefaultTolerance = 1e-9;

/// A subspace of R^d held as a d×r matrix with orthonormal columns;
/// r = 0 is the zero subspace.
class Subspace {
 public:
  static Subspace zero(std::size_t dim);
  static Subspace full(std::size_t dim);
  /// Takes ownership of columns that are already orthonormal.
  static Subspace from_orthonormal(Mat onb);

  std::size_t dim() const { return static_cast<std::size_t>(onb_.rows()); }
  std::size_t rank() const { return static_cast<std::size_t>(onb_.cols()); }
  const Mat& basis() const { return onb_; }
  Mat projector() const { return onb_ * onb_.transpose(); }

 private:
  explicit Subspace(Mat onb) : onb_(std::move(onb)) {}
  Mat onb_;
};

/// Orthonormal basis of span(vectors) in R^dim; rank by the relative
/// singular-value threshold. Empty input gives {0}. Throws InputError on a
/// dimension mismatch.
Subspace orthonormalize(const std::vector<Vec>& vectors, std::size_t dim);

Vec project(const Subspace& s, const Vec& v);
double distance(const Subspace& s, const Vec& v);

/// Common kernel of the stacked complement projectors (I - P_i). The empty
/// list is the whole space.
Subspace intersect(const std::vector<Subspace>& spaces, std::size_t dim);

/// ‖v - P v‖ ≤ tol · max(1, ‖v‖).
bool member(const Subspace& s, const Vec& v, double tol);

Subspace orthocomplement(const Subspace& s);

/// Smallest subspace containing both (the closed linear sum).
Subspace closed_span(const Subspace& a, const Subspace& b);

/// Same span, up to tol on the projector difference.
bool same_span(const Subspace& a, const Subspace& b, double tol);

/// Dimension, state h, named atom subspaces, membership tolerance.
class QuantumInstance {
 public:
  /// Throws InputError for dim outside 1..8, mismatched dimensions, a state
  /// of norm ≤ tol, a non-positive tolerance, or a bad atom list.
  QuantumInstance(std::size_t dim, Vec state, std::vector<std::string> names,
                  std::vector<Subspace> subspaces, double tolerance = kDefaultTolerance);

  std::size_t dim() const { return dim_; }
  const Vec& state() const { return state_; }
  double tolerance() const { return tolerance_; }
  const AtomLanguage& language() const { return language_; }
  std::size_t atom_count() const { return subspaces_.size(); }
  const Subspace& subspace(std::size_t i) const { return subspaces_[i]; }

  /// A* = ⋂_{a ∈ A} a.
  Subspace meet(AtomSet a) const;

  /// Copy with one more atom appended.
  QuantumInstance with_atom(const std::string& name, Subspace s) const;
  QuantumInstance with_tolerance(double tol) const;

 private:
  std::size_t dim_;
  Vec state_;
  AtomLanguage language_;
  std::vector<Subspace> subspaces_;
  double tolerance_;
};

/// {b : A*_p(h) ∈ b}.
AtomSet quantum_consequence(const QuantumInstance& q, AtomSet a);

/// Full 2^n table of quantum_consequence.
ConsequenceTable quantum_table(const QuantumInstance& q);

namespace property {
inline constexpr const char* kBca = "Distance monotonicity (B ⊆ C(A))";
inline constexpr const char* kConjunctionRule = "∧-R (intersection atom)";
inline constexpr const char* kNegR1 = "¬-R1";
inline constexpr const char* kNegR2 = "¬-R2";
inline constexpr const char* kOrR2 = "∨-R2";
inline constexpr const char* kDistributivity = "Distributivity";
}  // namespace property

/// For every A, B with B ⊆ C(A): A*_p(h) = (A* ∩ B*)_p(h) and
/// d(h, A*) ≥ d(h, B*), both within tolerance. Witness [A, B].
PropertyReport check_bca(const QuantumInstance& q);

/// For every A: adding the atom A* and replacing A by it leaves the
/// consequences over the original atoms unchanged, for every extra B.
/// Witness [A, B].
PropertyReport check_conjunction_rule(const QuantumInstance& q);

struct NegationDemo {
  QuantumInstance extended;  // original atoms plus "!b" = b^⊥
  AtomSet c_a_not_b;         // C({a, ¬b}) over the extended language
  AtomSet c_a;               // C({a})
  bool c_a_not_b_is_full = false;
  bool b_in_c_a = false;
  double meet_norm = 0;          // ‖(a ∩ b^⊥)_p(h)‖
  double b_residual = 0;         // ‖x - b_p(x)‖ for x = a_p(h)
  PropertyReport neg_r1;         // C(A, b, ¬b) = L for every A
  PropertyReport neg_r2;         // the instance C(a, ¬b) = L ⇒ b ∈ C(a)
};

/// Orthocomplement as negation of atom b, tested against atom a.
NegationDemo negation_failure_demo(const QuantumInstance& q, std::size_t a, std::size_t b);

struct DisjunctionDemo {
  QuantumInstance extended;  // plus "x|y" = closed span, "a&x", "a&y", "(a&x)|(a&y)"
  AtomSet c_a_x, c_a_y, c_a_x_or_y;
  PropertyReport or_r2;           // C(a,x) ∩ C(a,y) ⊆ C(a, x∨y)
  PropertyReport distributivity;  // C(a ∧ (x∨y)) = C((a∧x) ∨ (a∧y))
};

/// ∨ modelled by closed linear span, with context {a} and disjuncts x, y.
DisjunctionDemo disjunction_span_demo(const QuantumInstance& q, std::size_t a, std::size_t x,
                                      std::size_t y);

/// Three lines a=(1,0), b=(1,1), c=(1,2) in the plane with h=(1,2).
QuantumInstance generic_lines_instance();

}  // namespace nml::quantum
