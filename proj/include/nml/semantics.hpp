#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "nml/bits.hpp"
#include "nml/core.hpp"
#include "nml/report.hpp"

namespace nml {

/// Models with a satisfaction relation over an atom language.
/// sat[m] is the set of atoms model m satisfies.
class ModelWorld {
 public:
  static constexpr std::size_t kMaxModels = 24;

  /// Throws InputError on duplicate names, too many models, or stray bits.
  ModelWorld(AtomLanguage language, std::vector<std::string> models, std::vector<AtomSet> sat);

  const AtomLanguage& language() const { return language_; }
  std::size_t model_count() const { return models_.size(); }
  const std::string& model_name(std::size_t i) const { return models_[i]; }
  const std::vector<std::string>& model_names() const { return models_; }
  std::optional<std::size_t> model_index(const std::string& name) const;
  AtomSet satisfied(std::size_t model) const { return sat_[model]; }
  ModelMask all_models() const { return ModelMask::full(static_cast<unsigned>(models_.size())); }
  std::size_t model_subset_count() const { return std::size_t{1} << models_.size(); }

  std::string render(ModelMask x) const;

  bool operator==(const ModelWorld&) const = default;

 private:
  AtomLanguage language_;
  std::vector<std::string> models_;
  std::vector<AtomSet> sat_;
};

/// hat(A): the models satisfying every atom of A.
ModelMask mod_of(const ModelWorld& world, AtomSet a);
/// bar(X): the atoms satisfied by every model of X (all atoms for X = ∅).
AtomSet theory_of(const ModelWorld& world, ModelMask x);

/// The five Galois-connection law pairs, over all atom sets and model sets.
PropertyReport check_galois(const ModelWorld& world);

/// {hat(A) : A ⊆ L}, deduplicated, increasing mask order.
std::vector<ModelMask> definable_sets(const ModelWorld& world);

enum class ExtensionPolicy {
  /// Listed sets take their listed value; every other set maps to itself.
  ExplicitTable,
  /// f' from the representation construction: f'(X) = f(Y) for the first
  /// definable Y (increasing mask order) with f(Y) ⊆ X ⊆ Y, else X.
  TwoCase,
};

/// Choice function on the model sets of a world.
///
/// `base` maps every definable set to its value. Under ExplicitTable,
/// `extra` may additionally fix values on non-definable sets. Evaluation
/// of TwoCase is lazy and memoized; the memo is guarded so concurrent
/// readers either recompute (idempotent) or see the final value.
class ChoiceFunction {
 public:
  ChoiceFunction(ExtensionPolicy policy, std::vector<ModelMask> definable,
                 std::map<ModelMask, ModelMask> base, std::map<ModelMask, ModelMask> extra = {});

  ChoiceFunction(const ChoiceFunction& other);
  ChoiceFunction& operator=(const ChoiceFunction& other);

  ExtensionPolicy policy() const { return policy_; }
  const std::map<ModelMask, ModelMask>& base() const { return base_; }
  const std::map<ModelMask, ModelMask>& extra() const { return extra_; }
  const std::vector<ModelMask>& definable() const { return definable_; }
  bool is_definable(ModelMask x) const { return base_.count(x) != 0; }

  ModelMask operator()(ModelMask x) const;

  /// Dense table over all 2^|M| sets.
  std::vector<ModelMask> materialize(std::size_t model_count) const;

 private:
  ModelMask evaluate(ModelMask x) const;

  ExtensionPolicy policy_;
  std::vector<ModelMask> definable_;
  std::map<ModelMask, ModelMask> base_;
  std::map<ModelMask, ModelMask> extra_;
  mutable std::shared_mutex memo_mutex_;
  mutable std::unordered_map<ModelMask, ModelMask> memo_;
};

/// ⟨M, ⊨, f⟩. `restricted` records a claim of Consistency; nothing is
/// enforced at construction.
struct FCModel {
  ModelWorld world;
  ChoiceFunction f;
  bool restricted = false;
};

/// Explicit-table model: `values` lists f on chosen sets, everything else
/// maps to itself.
FCModel make_table_model(ModelWorld world, const std::map<ModelMask, ModelMask>& values,
                         bool restricted = false);

/// C(A) = bar(f(hat(A))).
ConsequenceTable induced_consequence(const FCModel& fcm);

namespace property {
inline constexpr const char* kGalois = "Galois connection";
inline constexpr const char* kContraction = "Contraction";
inline constexpr const char* kLocalCumulativity = "Local Cumulativity";
inline constexpr const char* kConsistency = "Consistency";
inline constexpr const char* kCoherence = "Coherence";
inline constexpr const char* kLocalMonotonicity = "Local Monotonicity";
inline constexpr const char* kFPrimeWellDefined = "f' well-defined";
}  // namespace property

/// Exhaustive up to this many models; above it, sampled.
inline constexpr std::size_t kExhaustiveModelLimit = 20;
inline constexpr std::size_t kChoiceSamplePairs = 1'000'000;

/// Contraction, Local Cumulativity, Consistency, Coherence, Local
/// Monotonicity. Witness layouts (ModelMask bits): Contraction and
/// Consistency [X]; the others [X, Y] as in their defining implication
/// (Local Cumulativity/Monotonicity: f(X) ⊆ Y ⊆ X; Coherence: X ⊆ Y).
std::vector<PropertyReport> check_choice_axioms(const FCModel& fcm, std::uint64_t sample_seed = 1);

/// Re-evaluates a failed choice-axiom report on its witness.
bool witness_violates(const FCModel& fcm, const PropertyReport& report);

/// Representation of a C-logic by a restricted fC-model whose models are
/// the consistent theories. Throws ContractError naming the failed axiom
/// if the table is not a C-logic.
FCModel represent(const ConsequenceTable& table);

/// Checks that every definable Y with f(Y) ⊆ X ⊆ Y gives the same f(Y).
/// Throws ContractError unless the policy is TwoCase.
PropertyReport f_prime_well_defined(const FCModel& fcm, ModelMask x);

}  // namespace nml
