#include "nml/builtins.hpp"

namespace nml::builtins {

FCModel disjunction_model() {
  AtomLanguage lang({"a", "b", "c", "d"});
  auto sat = [&](std::initializer_list<const char*> atoms) {
    AtomSet s;
    for (const char* a : atoms) s |= AtomSet::singleton(static_cast<unsigned>(*lang.index_of(a)));
    return s;
  };
  ModelWorld world(lang, {"m", "n", "p"}, {sat({"a", "c"}), sat({"a", "d"}), sat({"b", "c"})});
  return make_table_model(std::move(world), {{ModelMask(0b011), ModelMask(0b001)}}, /*restricted=*/true);
}

DisjunctionOutcome disjunction_example(const FCModel& fcm, int depth) {
  const AtomLanguage& lang = fcm.world.language();
  const Formula a = parse_formula("a", lang), b = parse_formula("b", lang), c = parse_formula("c", lang);
  const Formula a_or_b = Formula::disj(a, b);
  const ModelMask ext_c = extension(fcm.world, c);
  auto chosen = [&](const Formula& phi) { return fcm.f(extension(fcm.world, phi)); };

  DisjunctionOutcome out;
  out.c_in_c_a = chosen(a).subset_of(ext_c);
  out.c_in_c_b = chosen(b).subset_of(ext_c);
  out.c_in_c_a_or_b = chosen(a_or_b).subset_of(ext_c);
  out.hat_a_or_b = extension(fcm.world, a_or_b);
  out.f_hat_a_or_b = fcm.f(out.hat_a_or_b);
  out.n_chosen = fcm.world.model_index("n") &&
                 out.f_hat_a_or_b.contains(static_cast<unsigned>(*fcm.world.model_index("n")));
  out.rules = check_connective_rules(fcm, ClosedLanguage(lang, depth));
  return out;
}

bool DisjunctionOutcome::as_expected(const ModelWorld& world) const {
  if (!(c_in_c_a && c_in_c_b && !c_in_c_a_or_b && n_chosen && hat_a_or_b == world.all_models())) return false;
  for (const char* name : {property::kAndR, property::kNotR1, property::kNotR2, property::kOrR1}) {
    const auto* r = find_report(rules, name);
    if (!r || !r->holds()) return false;
  }
  const auto* or2 = find_report(rules, property::kOrR2);
  return or2 && !or2->holds();
}

CoherenceOutcome coherence_example(const FCModel& fcm) { return CoherenceOutcome{check_choice_axioms(fcm)}; }

bool CoherenceOutcome::as_expected() const {
  const auto* contraction = find_report(axioms, property::kContraction);
  const auto* lc = find_report(axioms, property::kLocalCumulativity);
  const auto* coh = find_report(axioms, property::kCoherence);
  if (!contraction || !lc || !coh) return false;
  return contraction->holds() && lc->holds() && !coh->holds() &&
         coh->witness == std::vector<std::uint32_t>{0b011, 0b111};
}

NegationOutcome negation_example() {
  const auto q = quantum::generic_lines_instance();
  NegationOutcome out{quantum::negation_failure_demo(q, 0, 1), 0};
  out.margin = out.demo.b_residual / q.tolerance();
  return out;
}

bool NegationOutcome::as_expected() const {
  return demo.c_a_not_b_is_full && !demo.b_in_c_a && demo.neg_r1.holds() && !demo.neg_r2.holds() &&
         margin >= 1e7;
}

}  // namespace nml::builtins
