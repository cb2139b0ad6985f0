#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "nml/formula.hpp"
#include "nml/report.hpp"
#include "nml/semantics.hpp"

namespace nml {

/// Dense set of closed-language formula indices.
class FormulaSet {
 public:
  FormulaSet() = default;
  explicit FormulaSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool contains(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void insert(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool full() const;
  bool subset_of(const FormulaSet& o) const;
  FormulaSet operator&(const FormulaSet& o) const;
  /// First member of this set missing from `o`, if any.
  std::optional<std::size_t> first_not_in(const FormulaSet& o) const;
  std::vector<std::size_t> members() const;

  bool operator==(const FormulaSet&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// An fC-model with ⊨ extended classically to a closed language. C'(A) is
/// bar(f(hat(A))) with hat and bar taken over formulas; f is used on
/// arbitrary model sets (its extension policy applies).
///
/// Holds memo tables; not for concurrent use.
class ExtendedModel {
 public:
  ExtendedModel(const FCModel& fcm, const ClosedLanguage& lang);

  const FCModel& model() const { return fcm_; }
  const ClosedLanguage& language() const { return lang_; }

  /// Models satisfying formula i of the closed language.
  ModelMask ext(std::size_t i) const { return ext_[i]; }
  /// Models satisfying an arbitrary formula over the base atoms.
  ModelMask ext(const Formula& phi) const { return extension(fcm_.world, phi); }
  ModelMask all_models() const { return fcm_.world.all_models(); }

  /// hat of a set of closed-language formulas.
  ModelMask hat(const std::vector<std::size_t>& formulas) const;

  /// f(X).
  ModelMask choose(ModelMask x);
  /// C'(A) restricted to the closed language, given hat(A).
  const FormulaSet& consequence(ModelMask hat);
  /// phi ∈ C'(A) for a formula phi given by its extension.
  bool entails(ModelMask hat, ModelMask phi_ext) { return choose(hat).subset_of(phi_ext); }

 private:
  const FCModel& fcm_;
  const ClosedLanguage& lang_;
  std::vector<ModelMask> ext_;
  std::vector<ModelMask> dense_f_;
  std::unordered_map<ModelMask, FormulaSet> bar_memo_;
};

/// C'(A) over the closed language, as the formulas themselves.
std::vector<Formula> extended_consequence(const FCModel& fcm, const std::vector<Formula>& a,
                                          const ClosedLanguage& lang);

/// Contexts A that rule checks quantify over, as closed-language indices.
struct ContextPool {
  std::vector<std::vector<std::size_t>> sets;

  /// ∅, then every singleton, then every unordered pair.
  static ContextPool singletons_and_pairs(const ClosedLanguage& lang);
};

namespace property {
inline constexpr const char* kAndR = "∧-R";
inline constexpr const char* kNotR1 = "¬-R1";
inline constexpr const char* kNotR2 = "¬-R2";
inline constexpr const char* kOrR1 = "∨-R1";
inline constexpr const char* kOrR2 = "∨-R2";
inline constexpr const char* kConservativeExtension = "Conservative extension";
inline constexpr const char* kClassicalImplication = "Classical implication";
}  // namespace property

/// ∧-R, ¬-R1, ¬-R2, ∨-R1, ∨-R2 with A over the pool and a, b over the
/// closed language. Witness layout: [pool index, a, b, c] with unused
/// slots omitted; c is the offending formula for ∨-R2. Failures carry an
/// evaluation trace in `notes`.
std::vector<PropertyReport> check_connective_rules(const FCModel& fcm, const ClosedLanguage& lang,
                                                   const ContextPool& pool);
std::vector<PropertyReport> check_connective_rules(const FCModel& fcm, const ClosedLanguage& lang);

/// P ∩ C'(A) = C(A) for every A ⊆ P, with C' built on represent(table).
/// Propagates represent's ContractError. Witness [A].
PropertyReport conservative_extension_check(const ConsequenceTable& table, int depth);

/// For every a, b in the closed language with a ⊨ b by truth tables over
/// the base atoms: b ∈ C(A, a) for every pooled A, and C(a, ¬b) = L.
/// Witness [a, b] or [a, b, pool index]. Base languages of up to 6 atoms.
PropertyReport classical_implication_checks(const FCModel& fcm, const ClosedLanguage& lang,
                                            const ContextPool& pool);
PropertyReport classical_implication_checks(const FCModel& fcm, const ClosedLanguage& lang);

}  // namespace nml
