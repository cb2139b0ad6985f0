#include "nml/connectives.hpp"

#include <bit>
#include <map>
#include <unordered_set>

#include "nml/error.hpp"

namespace nml {

// ---------------------------------------------------------------------------
// FormulaSet
// ---------------------------------------------------------------------------

bool FormulaSet::full() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const std::size_t bits = std::min<std::size_t>(64, size_ - w * 64);
    const std::uint64_t want = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    if (words_[w] != want) return false;
  }
  return true;
}

bool FormulaSet::subset_of(const FormulaSet& o) const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~o.words_[w]) return false;
  return true;
}

FormulaSet FormulaSet::operator&(const FormulaSet& o) const {
  FormulaSet out = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= o.words_[w];
  return out;
}

std::optional<std::size_t> FormulaSet::first_not_in(const FormulaSet& o) const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (const std::uint64_t d = words_[w] & ~o.words_[w])
      return w * 64 + static_cast<std::size_t>(std::countr_zero(d));
  return std::nullopt;
}

std::vector<std::size_t> FormulaSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size_; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// ExtendedModel
// ---------------------------------------------------------------------------

ExtendedModel::ExtendedModel(const FCModel& fcm, const ClosedLanguage& lang) : fcm_(fcm), lang_(lang) {
  if (!(lang.base() == fcm.world.language()))
    throw ContractError("closed language is not built over the model's atoms");
  const ModelMask all = fcm.world.all_models();
  ext_.reserve(lang.size());
  // Children always precede their parents in the closed-language order.
  for (const Formula& phi : lang.formulas()) {
    switch (phi.kind()) {
      case Formula::Kind::Atom: ext_.push_back(mod_of(fcm.world, AtomSet::singleton(static_cast<unsigned>(phi.atom_index())))); break;
      case Formula::Kind::Not: ext_.push_back(all - ext_[*lang.index_of(phi.child())]); break;
      case Formula::Kind::And:
        ext_.push_back(ext_[*lang.index_of(phi.left())] & ext_[*lang.index_of(phi.right())]);
        break;
    }
  }
}

ModelMask ExtendedModel::hat(const std::vector<std::size_t>& formulas) const {
  ModelMask out = all_models();
  for (std::size_t i : formulas) out &= ext_[i];
  return out;
}

ModelMask ExtendedModel::choose(ModelMask x) { return fcm_.f(x); }

const FormulaSet& ExtendedModel::consequence(ModelMask hat) {
  auto it = bar_memo_.find(hat);
  if (it != bar_memo_.end()) return it->second;
  const ModelMask chosen = choose(hat);
  FormulaSet out(lang_.size());
  for (std::size_t i = 0; i < ext_.size(); ++i)
    if (chosen.subset_of(ext_[i])) out.insert(i);
  return bar_memo_.emplace(hat, std::move(out)).first->second;
}

std::vector<Formula> extended_consequence(const FCModel& fcm, const std::vector<Formula>& a,
                                          const ClosedLanguage& lang) {
  ExtendedModel em(fcm, lang);
  ModelMask hat = em.all_models();
  for (const Formula& phi : a) hat &= em.ext(phi);
  std::vector<Formula> out;
  for (std::size_t i : em.consequence(hat).members()) out.push_back(lang[i]);
  return out;
}

ContextPool ContextPool::singletons_and_pairs(const ClosedLanguage& lang) {
  ContextPool pool;
  pool.sets.push_back({});
  for (std::size_t i = 0; i < lang.size(); ++i) pool.sets.push_back({i});
  for (std::size_t i = 0; i < lang.size(); ++i)
    for (std::size_t j = i + 1; j < lang.size(); ++j) pool.sets.push_back({i, j});
  return pool;
}

// ---------------------------------------------------------------------------
// Rule checks
//
// Every rule instance depends on A only through hat(A) and on a formula only
// through its extension, so both are reduced to first representatives. The
// scan order over representatives matches the naive (A, a, b) order, which
// keeps the first reported witness the same as a full scan would give.
// ---------------------------------------------------------------------------

namespace {

struct Classes {
  std::vector<std::size_t> reps;  // first index per distinct key, ascending
};

Classes context_classes(const ExtendedModel& em, const ContextPool& pool, std::vector<ModelMask>& hats) {
  Classes c;
  std::unordered_set<ModelMask> seen;
  hats.clear();
  for (std::size_t p = 0; p < pool.sets.size(); ++p) {
    const ModelMask h = em.hat(pool.sets[p]);
    hats.push_back(h);
    if (seen.insert(h).second) c.reps.push_back(p);
  }
  return c;
}

Classes formula_classes(const ExtendedModel& em) {
  Classes c;
  std::unordered_set<ModelMask> seen;
  for (std::size_t i = 0; i < em.language().size(); ++i)
    if (seen.insert(em.ext(i)).second) c.reps.push_back(i);
  return c;
}

std::string scope_label(const ClosedLanguage& lang, const ContextPool& pool) {
  return "bounded: depth " + std::to_string(lang.depth()) + ", " + std::to_string(lang.size()) +
         " formulas, " + std::to_string(pool.sets.size()) + " contexts";
}

std::string render_context(const ClosedLanguage& lang, const std::vector<std::size_t>& ctx) {
  std::string out = "{";
  for (std::size_t k = 0; k < ctx.size(); ++k) {
    if (k) out += ", ";
    out += lang[ctx[k]].to_string(lang.base());
  }
  return out + "}";
}

std::uint32_t u32(std::size_t v) { return static_cast<std::uint32_t>(v); }

}  // namespace

std::vector<PropertyReport> check_connective_rules(const FCModel& fcm, const ClosedLanguage& lang,
                                                   const ContextPool& pool) {
  ExtendedModel em(fcm, lang);
  const ModelMask all = em.all_models();
  std::vector<ModelMask> hats;
  const Classes ctx = context_classes(em, pool, hats);
  const Classes fml = formula_classes(em);
  const std::string scope = scope_label(lang, pool);
  const AtomLanguage& base = lang.base();
  auto show = [&](std::size_t i) { return lang[i].to_string(base); };

  std::vector<PropertyReport> out;

  // ∧-R: C(A, a∧b) = C(A, a, b).
  out.push_back([&]() -> PropertyReport {
    for (std::size_t p : ctx.reps) {
      const ModelMask x = hats[p];
      std::unordered_set<ModelMask> seen_a;
      for (std::size_t a : fml.reps) {
        if (!seen_a.insert(x & em.ext(a)).second) continue;
        std::unordered_set<ModelMask> seen_ab;
        for (std::size_t b : fml.reps) {
          const ModelMask split = x & em.ext(a) & em.ext(b);
          if (!seen_ab.insert(split).second) continue;
          const auto ci = lang.conj_index(a, b);
          const ModelMask conj_ext = ci ? em.ext(*ci) : (em.ext(a) & em.ext(b));
          if (!(em.consequence(x & conj_ext) == em.consequence(split))) {
            return fails(property::kAndR, {u32(p), u32(a), u32(b)},
                      "C(A, a∧b) ≠ C(A, a, b) for A = " + render_context(lang, pool.sets[p]) + ", a = " +
                          show(a) + ", b = " + show(b),
                      scope);
          }
        }
      }
    }
    return holds(property::kAndR, scope);
  }());

  // ¬-R1: C(A, a, ¬a) = L.
  out.push_back([&]() -> PropertyReport {
    for (std::size_t p : ctx.reps) {
      for (std::size_t a : fml.reps) {
        const auto ni = lang.neg_index(a);
        const ModelMask neg_ext = ni ? em.ext(*ni) : (all - em.ext(a));
        if (!em.consequence(hats[p] & em.ext(a) & neg_ext).full()) {
          return fails(property::kNotR1, {u32(p), u32(a)},
                    "C(A, a, ¬a) ≠ L for A = " + render_context(lang, pool.sets[p]) + ", a = " + show(a), scope);
        }
      }
    }
    return holds(property::kNotR1, scope);
  }());

  // ¬-R2: C(A, ¬a) = L ⇒ a ∈ C(A).
  out.push_back([&]() -> PropertyReport {
    for (std::size_t p : ctx.reps) {
      const ModelMask x = hats[p];
      for (std::size_t a : fml.reps) {
        const auto ni = lang.neg_index(a);
        const ModelMask neg_ext = ni ? em.ext(*ni) : (all - em.ext(a));
        if (em.consequence(x & neg_ext).full() && !em.entails(x, em.ext(a))) {
          return fails(property::kNotR2, {u32(p), u32(a)},
                    "C(A, ¬a) = L but a ∉ C(A) for A = " + render_context(lang, pool.sets[p]) + ", a = " + show(a),
                    scope);
        }
      }
    }
    return holds(property::kNotR2, scope);
  }());

  auto disj_ext = [&](std::size_t a, std::size_t b) {
    if (auto idx = lang.index_of(Formula::disj(lang[a], lang[b]))) return em.ext(*idx);
    return em.ext(a) | em.ext(b);
  };

  // ∨-R1: a ∈ C(A) ⇒ a∨b ∈ C(A). Depends on A only through f(hat(A)).
  out.push_back([&]() -> PropertyReport {
    std::unordered_set<ModelMask> seen_choice;
    for (std::size_t p : ctx.reps) {
      const ModelMask x = hats[p];
      if (!seen_choice.insert(em.choose(x)).second) continue;
      for (std::size_t a : fml.reps) {
        if (!em.entails(x, em.ext(a))) continue;
        for (std::size_t b : fml.reps) {
          if (!em.entails(x, disj_ext(a, b))) {
            return fails(property::kOrR1, {u32(p), u32(a), u32(b)},
                      "a ∈ C(A) but a∨b ∉ C(A) for A = " + render_context(lang, pool.sets[p]) + ", a = " + show(a) +
                          ", b = " + show(b),
                      scope);
          }
        }
      }
    }
    return holds(property::kOrR1, scope);
  }());

  // ∨-R2: C(A, a) ∩ C(A, b) ⊆ C(A, a∨b).
  out.push_back([&]() -> PropertyReport {
    for (std::size_t p : ctx.reps) {
      const ModelMask x = hats[p];
      std::unordered_set<ModelMask> seen_a;
      for (std::size_t a : fml.reps) {
        const ModelMask xa = x & em.ext(a);
        if (!seen_a.insert(xa).second) continue;
        std::unordered_set<ModelMask> seen_b;
        for (std::size_t b : fml.reps) {
          const ModelMask xb = x & em.ext(b);
          if (!seen_b.insert(xb).second) continue;
          const ModelMask xab = x & disj_ext(a, b);
          const FormulaSet both = em.consequence(xa) & em.consequence(xb);
          const auto c = both.first_not_in(em.consequence(xab));
          if (!c) continue;
          const FCModel& m = em.model();
          PropertyReport r = fails(property::kOrR2, {u32(p), u32(a), u32(b), u32(*c)},
                    show(*c) + " ∈ C(A, a) ∩ C(A, b) but ∉ C(A, a∨b) for A = " +
                        render_context(lang, pool.sets[p]) + ", a = " + show(a) + ", b = " + show(b),
                    scope);
          r.notes = {
              "hat(A) = " + m.world.render(x),
              "hat(A, a) = " + m.world.render(xa) + ", f = " + m.world.render(em.choose(xa)),
              "hat(A, b) = " + m.world.render(xb) + ", f = " + m.world.render(em.choose(xb)),
              "hat(A, a∨b) = " + m.world.render(xab) + ", f = " + m.world.render(em.choose(xab)),
              "ext(" + show(*c) + ") = " + m.world.render(em.ext(*c)),
          };
          return r;
        }
      }
    }
    return holds(property::kOrR2, scope);
  }());

  return out;
}

std::vector<PropertyReport> check_connective_rules(const FCModel& fcm, const ClosedLanguage& lang) {
  return check_connective_rules(fcm, lang, ContextPool::singletons_and_pairs(lang));
}

PropertyReport conservative_extension_check(const ConsequenceTable& table, int depth) {
  const FCModel fcm = represent(table);
  const ClosedLanguage lang(table.language(), depth);
  ExtendedModel em(fcm, lang);
  const std::string scope = "exhaustive over A ⊆ P, depth " + std::to_string(depth);
  for (std::uint32_t bits = 0; bits < table.language().subset_count(); ++bits) {
    const AtomSet a{bits};
    const FormulaSet& extended = em.consequence(mod_of(fcm.world, a));
    AtomSet restricted;
    for (std::size_t i = 0; i < table.atom_count(); ++i)  // atoms are the first entries
      if (extended.contains(i)) restricted |= AtomSet::singleton(static_cast<unsigned>(i));
    if (restricted != table(a))
      return fails(property::kConservativeExtension, {bits},
                   "P ∩ C'(A) = " + table.language().render(restricted) + " but C(A) = " +
                       table.language().render(table(a)) + " for A = " + table.language().render(a),
                   scope);
  }
  return holds(property::kConservativeExtension, scope);
}

namespace {

std::uint64_t truth_table(const Formula& phi, std::size_t atoms) {
  switch (phi.kind()) {
    case Formula::Kind::Atom: {
      std::uint64_t out = 0;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << atoms); ++v)
        if ((v >> phi.atom_index()) & 1u) out |= std::uint64_t{1} << v;
      return out;
    }
    case Formula::Kind::Not: {
      const std::size_t n = std::size_t{1} << atoms;
      const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
      return ~truth_table(phi.child(), atoms) & mask;
    }
    case Formula::Kind::And: return truth_table(phi.left(), atoms) & truth_table(phi.right(), atoms);
  }
  return 0;
}

}  // namespace

PropertyReport classical_implication_checks(const FCModel& fcm, const ClosedLanguage& lang,
                                            const ContextPool& pool) {
  const std::size_t k = lang.base().size();
  if (k > 6) throw ContractError("classical_implication_checks supports at most 6 atoms");
  ExtendedModel em(fcm, lang);
  const ModelMask all = em.all_models();
  std::vector<ModelMask> hats;
  const Classes ctx = context_classes(em, pool, hats);
  const std::string scope = scope_label(lang, pool) + ", truth-table entailment over " +
                            std::to_string(std::size_t{1} << k) + " valuations";

  std::vector<std::uint64_t> tt;
  tt.reserve(lang.size());
  for (const Formula& phi : lang.formulas()) tt.push_back(truth_table(phi, k));

  std::unordered_set<std::uint64_t> seen;
  for (std::size_t a = 0; a < lang.size(); ++a) {
    for (std::size_t b = 0; b < lang.size(); ++b) {
      if (tt[a] & ~tt[b]) continue;
      const ModelMask ea = em.ext(a), eb = em.ext(b);
      if (!seen.insert((std::uint64_t{ea.bits} << 32) | eb.bits).second) continue;
      // (5) C(a, ¬b) = L
      if (!em.consequence(ea & (all - eb)).full())
        return fails(property::kClassicalImplication, {u32(a), u32(b)},
                     "a ⊨ b but C(a, ¬b) ≠ L for a = " + lang[a].to_string(lang.base()) +
                         ", b = " + lang[b].to_string(lang.base()),
                     scope);
      // (4) b ∈ C(A, a) for every pooled A
      for (std::size_t p : ctx.reps)
        if (!em.entails(hats[p] & ea, eb))
          return fails(property::kClassicalImplication, {u32(a), u32(b), u32(p)},
                       "a ⊨ b but b ∉ C(A, a) for a = " + lang[a].to_string(lang.base()) +
                           ", b = " + lang[b].to_string(lang.base()) +
                           ", A = " + render_context(lang, pool.sets[p]),
                       scope);
    }
  }
  return holds(property::kClassicalImplication, scope);
}

PropertyReport classical_implication_checks(const FCModel& fcm, const ClosedLanguage& lang) {
  return classical_implication_checks(fcm, lang, ContextPool::singletons_and_pairs(lang));
}

}  // namespace nml
