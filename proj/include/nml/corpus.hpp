#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nml/core.hpp"
#include "nml/quantum.hpp"
#include "nml/semantics.hpp"

namespace nml::corpus {

/// The one generator behind every corpus.
using Rng = std::mt19937_64;
inline constexpr const char* kRngName = "mt19937_64";

enum class Mode { FcModel, Rejection, Quantum };

const char* to_string(Mode m);
/// "fc-model", "rejection", "quantum"; nullopt otherwise.
std::optional<Mode> parse_mode(std::string_view text);

struct CorpusSpec {
  std::uint64_t seed = 42;
  std::size_t atoms = 3;
  std::size_t count = 100;
  Mode mode = Mode::FcModel;

  static constexpr std::size_t kMaxAtoms = 8;
  static constexpr std::size_t kMaxCount = 1'000'000;

  /// Throws InputError when a field is out of range.
  void validate() const;
};

/// a, b, c, ... (then a1, b1, ... past z).
std::vector<std::string> default_atom_names(std::size_t n);
AtomLanguage default_language(std::size_t n);

/// Every row uniform over 2^L.
ConsequenceTable uniform_table(const AtomLanguage& language, Rng& rng);
/// Row A is A ∪ (uniform subset): Inclusion by construction.
ConsequenceTable inclusive_table(const AtomLanguage& language, Rng& rng);

enum class Proposal { Uniform, Inclusive };

struct RejectionResult {
  std::vector<ConsequenceTable> accepted;
  std::size_t attempts = 0;
  double acceptance_rate() const {
    return attempts ? static_cast<double>(accepted.size()) / static_cast<double>(attempts) : 0.0;
  }
};

/// Draws proposals until `count` pass Inclusion + Cumulativity or
/// `max_attempts` proposals have been made.
RejectionResult rejection_c_logics(const AtomLanguage& language, std::size_t count, Rng& rng,
                                   Proposal proposal = Proposal::Inclusive,
                                   std::size_t max_attempts = 10'000'000);

/// Dense choice function over the 2^model_count subsets satisfying
/// Contraction and Local Cumulativity, plus Consistency when restricted.
/// Built in increasing mask order: f(X) is X or some S ⊊ X with f(Y) = S
/// for every S ⊆ Y ⊊ X.
std::vector<ModelMask> random_choice_function(std::size_t model_count, Rng& rng, bool restricted);

/// Dense choice function with Contraction only (f(X) uniform among the
/// subsets of X, non-empty for X ≠ ∅).
std::vector<ModelMask> random_contraction(std::size_t model_count, Rng& rng);

/// Calls fn on every dense choice function satisfying Contraction and
/// Local Cumulativity (and Consistency when restricted). Returns the count.
std::size_t enumerate_choice_functions(std::size_t model_count, bool restricted,
                                       const std::function<void(const std::vector<ModelMask>&)>& fn);

/// World with 1..max_models models (names m0, m1, ...) and random
/// satisfaction, and a random_choice_function on it. The choice function
/// is stored as an explicit table over all model sets.
FCModel random_fc_model(const AtomLanguage& language, Rng& rng, std::size_t max_models = 6,
                        std::optional<bool> restricted = std::nullopt);

/// dim in [2, 4] unless fixed; subspaces are spans of random subsets of
/// one random basis, or random lines; h is random or inside an atom.
quantum::QuantumInstance random_quantum_instance(const AtomLanguage& language, Rng& rng,
                                                 std::optional<std::size_t> dim = std::nullopt);

}  // namespace nml::corpus
