#pragma once

#include <vector>

#include "nml/connectives.hpp"
#include "nml/quantum.hpp"
#include "nml/report.hpp"
#include "nml/semantics.hpp"

namespace nml::builtins {

/// Atoms a, b, c, d; models m ⊨ a, c; n ⊨ a, d; p ⊨ b, c. f is the
/// identity except f({m, n}) = {m}; every other set maps to itself.
FCModel disjunction_model();

struct DisjunctionOutcome {
  bool c_in_c_a = false;         // c ∈ C({a})
  bool c_in_c_b = false;         // c ∈ C({b})
  bool c_in_c_a_or_b = false;    // c ∈ C({a∨b})
  ModelMask hat_a_or_b;          // hat(a∨b)
  ModelMask f_hat_a_or_b;        // f(hat(a∨b))
  bool n_chosen = false;         // n ∈ f(hat(a∨b))
  std::vector<PropertyReport> rules;  // ∧-R, ¬-R1, ¬-R2, ∨-R1, ∨-R2

  /// The expected shape: c in both, not in the disjunction, hat(a∨b) is
  /// every model, n chosen, the first four rules hold and ∨-R2 fails.
  bool as_expected(const ModelWorld& world) const;
};

DisjunctionOutcome disjunction_example(const FCModel& fcm, int depth = 2);

struct CoherenceOutcome {
  std::vector<PropertyReport> axioms;  // as from check_choice_axioms
  /// Contraction and Local Cumulativity hold; Coherence fails with
  /// X = {m, n}, Y = {m, n, p}.
  bool as_expected() const;
};

CoherenceOutcome coherence_example(const FCModel& fcm);

struct NegationOutcome {
  quantum::NegationDemo demo;
  /// Ratio of the b-residual to the tolerance.
  double margin = 0;
  /// C({a, ¬b}) = L, b ∉ C({a}), ¬-R1 holds, the ¬-R2 instance fails,
  /// and the residual exceeds the tolerance by at least 10^7.
  bool as_expected() const;
};

/// On the generic-lines instance with atoms a and b.
NegationOutcome negation_example();

}  // namespace nml::builtins
