#pragma once

#include <bitset>
#include <cstdint>
#include <string>
#include <vector>

#include "nml/bits.hpp"
#include "nml/core.hpp"
#include "nml/report.hpp"

namespace nml::klm {

/// Propositions up to logical equivalence over k ≤ 3 atoms: a proposition
/// is the set of valuations satisfying it, stored as a bitmask over the
/// 2^k valuations. Valuation v satisfies atom i iff bit i of v is set.
using Prop = std::uint32_t;
/// A set of propositions (at most 2^8 of them).
using PropSet = std::bitset<256>;

class PropLanguage {
 public:
  static constexpr std::size_t kMaxAtoms = 3;

  /// Throws InputError unless 1 ≤ atoms ≤ 3.
  explicit PropLanguage(std::size_t atoms);

  std::size_t atoms() const { return atoms_; }
  std::size_t valuations() const { return std::size_t{1} << atoms_; }
  std::size_t props() const { return std::size_t{1} << valuations(); }
  Prop top() const { return static_cast<Prop>(props() - 1); }
  static constexpr Prop bottom() { return 0; }

  Prop atom(std::size_t i) const;
  Prop neg(Prop a) const { return top() & ~a; }
  static Prop conj(Prop a, Prop b) { return a & b; }
  static bool entails(Prop a, Prop b) { return (a & ~b) == 0; }

  /// Every proposition.
  PropSet all() const;
  /// {b : a ⊨ b}.
  const PropSet& upset(Prop a) const { return upsets_[a]; }
  /// ∧A; top for the empty set.
  Prop meet(const PropSet& a) const;

  /// Valuation indices, e.g. "{0,3}".
  std::string render(Prop a) const;

  bool operator==(const PropLanguage& o) const { return atoms_ == o.atoms_; }

 private:
  std::size_t atoms_;
  std::vector<PropSet> upsets_;
};

/// An operation over the propositional language, stored through its values
/// on single propositions; on a finite set A it is C(A) = C(∧A). This bakes
/// ∧-R and Left Logical Equivalence into the representation.
class Operation {
 public:
  /// values[a] = C({a}); throws InputError on a size mismatch.
  Operation(PropLanguage language, std::vector<PropSet> values);

  const PropLanguage& language() const { return language_; }
  const PropSet& operator()(Prop a) const { return values_[a]; }
  const PropSet& operator()(const PropSet& a) const { return values_[language_.meet(a)]; }
  const std::vector<PropSet>& values() const { return values_; }

  bool operator==(const Operation&) const = default;

 private:
  PropLanguage language_;
  std::vector<PropSet> values_;
};

/// a |~ b, with rows[a] = {b : a |~ b}.
struct Relation {
  PropLanguage language;
  std::vector<PropSet> rows;

  bool related(Prop a, Prop b) const { return rows[a].test(b); }
};

/// a |~ b iff b ∈ C(a).
Relation induced_relation(const Operation& op);

// Generators -----------------------------------------------------------------

/// C(a) = {b : f(a) ⊆ b} for a choice function f on valuation sets, given
/// densely (f[X.bits]). With classical ⊨ every valuation set is definable.
Operation from_choice(const PropLanguage& language, const std::vector<ModelMask>& f);
/// C(A) = theory of valuation m when m satisfies A, else everything.
Operation single_valuation(const PropLanguage& language, std::size_t m);
/// Classical consequence, C(a) = {b : a ⊨ b}.
Operation classical(const PropLanguage& language);

namespace property {
inline constexpr const char* kInclusion = "Inclusion";
inline constexpr const char* kCumulativity = "Cumulativity";
inline constexpr const char* kNotR1 = "¬-R1";
inline constexpr const char* kNotR2 = "¬-R2";
inline constexpr const char* kLle = "Left Logical Equivalence";
inline constexpr const char* kRightWeakening = "Right Weakening";
inline constexpr const char* kReflexivity = "Reflexivity";
inline constexpr const char* kCut = "Cut";
inline constexpr const char* kCautiousMonotonicity = "Cautious Monotonicity";
inline constexpr const char* kSingletonAgreement = "Singleton agreement";
inline constexpr const char* kMaxConsClassical = "Maximal consistent sets classical";
inline constexpr const char* kCnViaMaximal = "Cn = ⋂ maximal consistent supersets";
}  // namespace property

/// Inclusion, Cumulativity (b ∈ C(a) ⇒ C(a∧b) = C(a)), ¬-R1, ¬-R2.
/// Witnesses: [a] or [a, b].
std::vector<PropertyReport> check_hypotheses(const Operation& op);
bool conforms(const Operation& op);

/// LLE (structural), Right Weakening [a, b, b'], Reflexivity [a],
/// Cut [a, b, c], Cautious Monotonicity [a, b, c].
std::vector<PropertyReport> klm_relation_checks(const Relation& rel);
std::vector<PropertyReport> klm_relation_checks(const Operation& op);

/// b ∈ C(A) iff some a with A ⊨ a has a' |~ b for every a' with A ⊨ a' ⊨ a.
/// Throws ContractError naming the first failed rule.
Operation klm_to_consequence(const Relation& rel);

/// b ∈ C({a}) ⇔ a |~ b for every a. Witness [a, b].
PropertyReport singleton_agreement(const Relation& rel, const Operation& op);

/// The operation as a table whose atoms are the 2^(2^k) propositions
/// (named p0, p1, ...); k ≤ 2. Throws ContractError above that.
ConsequenceTable to_table(const Operation& op);

/// On every maximal consistent set M: a∧b ∈ M ⇔ a, b ∈ M and ¬a ∈ M ⇔ a ∉ M.
/// Witness [M bits, a, b] or [M bits, a]. k ≤ 2.
PropertyReport maximal_consistent_classical(const Operation& op);

/// Cn(A) equals the intersection of the maximal consistent supersets of A
/// (everything when there are none), for every A. Witness [A]. k ≤ 2.
PropertyReport cn_via_maximal(const Operation& op);

}  // namespace nml::klm
