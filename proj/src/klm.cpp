#include "nml/klm.hpp"

#include "nml/error.hpp"

namespace nml::klm {

namespace {

std::size_t first_of(const PropSet& s, std::size_t limit) {
  for (std::size_t i = 0; i < limit; ++i)
    if (s.test(i)) return i;
  return limit;
}

bool is_subset(const PropSet& a, const PropSet& b) { return (a & ~b).none(); }

std::uint32_t u32(std::size_t v) { return static_cast<std::uint32_t>(v); }

}  // namespace

PropLanguage::PropLanguage(std::size_t atoms) : atoms_(atoms) {
  if (atoms < 1 || atoms > kMaxAtoms)
    throw InputError("propositional language needs 1 to 3 atoms, got " + std::to_string(atoms));
  upsets_.resize(props());
  for (Prop a = 0; a < props(); ++a)
    for (Prop b = 0; b < props(); ++b)
      if (entails(a, b)) upsets_[a].set(b);
}

Prop PropLanguage::atom(std::size_t i) const {
  Prop out = 0;
  for (std::size_t v = 0; v < valuations(); ++v)
    if ((v >> i) & 1u) out |= Prop{1} << v;
  return out;
}

PropSet PropLanguage::all() const {
  PropSet s;
  for (std::size_t i = 0; i < props(); ++i) s.set(i);
  return s;
}

Prop PropLanguage::meet(const PropSet& a) const {
  Prop out = top();
  for (std::size_t i = 0; i < props(); ++i)
    if (a.test(i)) out &= static_cast<Prop>(i);
  return out;
}

std::string PropLanguage::render(Prop a) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t v = 0; v < valuations(); ++v) {
    if (!((a >> v) & 1u)) continue;
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

Operation::Operation(PropLanguage language, std::vector<PropSet> values)
    : language_(std::move(language)), values_(std::move(values)) {
  if (values_.size() != language_.props())
    throw InputError("operation needs " + std::to_string(language_.props()) + " values, got " +
                     std::to_string(values_.size()));
  const PropSet all = language_.all();
  for (const PropSet& v : values_)
    if (!is_subset(v, all)) throw InputError("operation value mentions a proposition outside the language");
}

Relation induced_relation(const Operation& op) { return Relation{op.language(), op.values()}; }

Operation from_choice(const PropLanguage& language, const std::vector<ModelMask>& f) {
  if (f.size() != language.props())
    throw InputError("choice function must list all " + std::to_string(language.props()) + " valuation sets");
  std::vector<PropSet> values;
  values.reserve(f.size());
  for (const ModelMask& chosen : f) values.push_back(language.upset(chosen.bits));
  return Operation(language, std::move(values));
}

Operation single_valuation(const PropLanguage& language, std::size_t m) {
  if (m >= language.valuations()) throw InputError("valuation index out of range");
  const Prop only = Prop{1} << m;
  std::vector<PropSet> values;
  for (Prop a = 0; a < language.props(); ++a)
    values.push_back((a & only) ? language.upset(only) : language.all());
  return Operation(language, std::move(values));
}

Operation classical(const PropLanguage& language) {
  std::vector<PropSet> values;
  for (Prop a = 0; a < language.props(); ++a) values.push_back(language.upset(a));
  return Operation(language, std::move(values));
}

std::vector<PropertyReport> check_hypotheses(const Operation& op) {
  const PropLanguage& lang = op.language();
  const std::size_t n = lang.props();
  const PropSet all = lang.all();
  auto show = [&](Prop a) { return lang.render(a); };
  std::vector<PropertyReport> out;

  out.push_back([&] {
    for (Prop a = 0; a < n; ++a)
      if (!op(a).test(a)) return fails(property::kInclusion, {a}, "a ∉ C(a) for a = " + show(a));
    return holds(property::kInclusion);
  }());

  out.push_back([&] {
    for (Prop a = 0; a < n; ++a)
      for (Prop b = 0; b < n; ++b)
        if (op(a).test(b) && op(a & b) != op(a))
          return fails(property::kCumulativity, {a, b},
                       "b ∈ C(a) but C(a∧b) ≠ C(a) for a = " + show(a) + ", b = " + show(b));
    return holds(property::kCumulativity);
  }());

  out.push_back([&] {
    // C(A, a, ¬a) = C(⊥) for every A and a.
    if (op(PropLanguage::bottom()) != all)
      return fails(property::kNotR1, {0}, "C(⊥) ≠ L");
    return holds(property::kNotR1);
  }());

  out.push_back([&] {
    for (Prop a = 0; a < n; ++a)
      for (Prop b = 0; b < n; ++b)
        if (op(a & lang.neg(b)) == all && !op(a).test(b))
          return fails(property::kNotR2, {a, b},
                       "C(a, ¬b) = L but b ∉ C(a) for a = " + show(a) + ", b = " + show(b));
    return holds(property::kNotR2);
  }());

  return out;
}

bool conforms(const Operation& op) {
  for (const auto& r : check_hypotheses(op))
    if (!r.holds()) return false;
  return true;
}

std::vector<PropertyReport> klm_relation_checks(const Relation& rel) {
  const PropLanguage& lang = rel.language;
  const std::size_t n = lang.props();
  auto show = [&](Prop a) { return lang.render(a); };
  std::vector<PropertyReport> out;

  PropertyReport lle = holds(property::kLle, "structural");
  lle.notes.push_back("propositions are equivalence classes of formulas");
  out.push_back(std::move(lle));

  out.push_back([&] {
    for (Prop a = 0; a < n; ++a)
      for (Prop b = 0; b < n; ++b) {
        if (!rel.related(a, b)) continue;
        const PropSet missing = lang.upset(b) & ~rel.rows[a];
        if (missing.any()) {
          const std::size_t w = first_of(missing, n);
          return fails(property::kRightWeakening, {a, b, u32(w)},
                       "a |~ b and b ⊨ b' but not a |~ b' for a = " + show(a) + ", b = " + show(b) +
                           ", b' = " + show(static_cast<Prop>(w)));
        }
      }
    return holds(property::kRightWeakening);
  }());

  out.push_back([&] {
    for (Prop a = 0; a < n; ++a)
      if (!rel.related(a, a)) return fails(property::kReflexivity, {a}, "not a |~ a for a = " + show(a));
    return holds(property::kReflexivity);
  }());

  out.push_back([&] {
    for (Prop a = 0; a < n; ++a)
      for (Prop b = 0; b < n; ++b) {
        if (!rel.related(a, b)) continue;
        const PropSet missing = rel.rows[a & b] & ~rel.rows[a];
        if (missing.any()) {
          const std::size_t c = first_of(missing, n);
          return fails(property::kCut, {a, b, u32(c)},
                       "a |~ b and a∧b |~ c but not a |~ c for a = " + show(a) + ", b = " + show(b) +
                           ", c = " + show(static_cast<Prop>(c)));
        }
      }
    return holds(property::kCut);
  }());

  out.push_back([&] {
    for (Prop a = 0; a < n; ++a)
      for (Prop b = 0; b < n; ++b) {
        if (!rel.related(a, b)) continue;
        const PropSet missing = rel.rows[a] & ~rel.rows[a & b];
        if (missing.any()) {
          const std::size_t c = first_of(missing, n);
          return fails(property::kCautiousMonotonicity, {a, b, u32(c)},
                       "a |~ b and a |~ c but not a∧b |~ c for a = " + show(a) + ", b = " + show(b) +
                           ", c = " + show(static_cast<Prop>(c)));
        }
      }
    return holds(property::kCautiousMonotonicity);
  }());

  return out;
}

std::vector<PropertyReport> klm_relation_checks(const Operation& op) {
  return klm_relation_checks(induced_relation(op));
}

Operation klm_to_consequence(const Relation& rel) {
  for (const auto& r : klm_relation_checks(rel))
    if (!r.holds()) throw ContractError("relation is not cumulative: " + r.property + " fails (" + r.detail + ")");
  const PropLanguage& lang = rel.language;
  const Prop top = lang.top();
  std::vector<PropSet> values(lang.props());
  for (Prop v = 0; v < lang.props(); ++v) {
    // v is ∧A; A ⊨ a iff v ⊆ a.
    PropSet out;
    const Prop free = top & ~v;
    Prop s = free;
    while (true) {
      // a = v | s; a' ranges over v | t for the submasks t of s.
      PropSet every = lang.all();
      Prop t = s;
      while (true) {
        every &= rel.rows[v | t];
        if (t == 0) break;
        t = (t - 1) & s;
      }
      out |= every;
      if (s == 0) break;
      s = (s - 1) & free;
    }
    values[v] = out;
  }
  return Operation(lang, std::move(values));
}

PropertyReport singleton_agreement(const Relation& rel, const Operation& op) {
  const PropLanguage& lang = rel.language;
  for (Prop a = 0; a < lang.props(); ++a) {
    const PropSet diff = rel.rows[a] ^ op(a);
    if (diff.any()) {
      const std::size_t b = first_of(diff, lang.props());
      return fails(property::kSingletonAgreement, {a, u32(b)},
                   "a |~ b and b ∈ C({a}) disagree for a = " + lang.render(a) + ", b = " +
                       lang.render(static_cast<Prop>(b)));
    }
  }
  return holds(property::kSingletonAgreement);
}

ConsequenceTable to_table(const Operation& op) {
  const PropLanguage& lang = op.language();
  if (lang.atoms() > 2) throw ContractError("to_table supports at most 2 atoms");
  const std::size_t n = lang.props();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  AtomLanguage atoms(std::move(names));

  std::vector<AtomSet> rows(atoms.subset_count());
  std::vector<Prop> meet(atoms.subset_count());
  meet[0] = lang.top();
  for (std::uint32_t bits = 0; bits < rows.size(); ++bits) {
    if (bits) {
      const unsigned low = static_cast<unsigned>(std::countr_zero(bits));
      meet[bits] = meet[bits & (bits - 1)] & static_cast<Prop>(low);
    }
    const PropSet& value = op(meet[bits]);
    std::uint32_t row = 0;
    for (std::size_t p = 0; p < n; ++p)
      if (value.test(p)) row |= 1u << p;
    rows[bits] = AtomSet(row);
  }
  return ConsequenceTable(std::move(atoms), std::move(rows));
}

PropertyReport maximal_consistent_classical(const Operation& op) {
  const ConsequenceTable table = to_table(op);
  const PropLanguage& lang = op.language();
  const std::size_t n = lang.props();
  for (AtomSet m : maximal_consistent_sets(table)) {
    for (Prop a = 0; a < n; ++a) {
      const bool neg_in = m.contains(lang.neg(a));
      if (neg_in == m.contains(a))
        return fails(property::kMaxConsClassical, {m.bits, a},
                     "¬a ∈ M ⇔ a ∉ M fails for M = " + table.language().render(m) + ", a = " + lang.render(a));
      for (Prop b = 0; b < n; ++b)
        if (m.contains(a & b) != (m.contains(a) && m.contains(b)))
          return fails(property::kMaxConsClassical, {m.bits, a, b},
                       "a∧b ∈ M ⇔ a, b ∈ M fails for M = " + table.language().render(m) + ", a = " +
                           lang.render(a) + ", b = " + lang.render(b));
    }
  }
  return holds(property::kMaxConsClassical);
}

PropertyReport cn_via_maximal(const Operation& op) {
  const ConsequenceTable table = to_table(op);
  const CnOperator cn_op(table);
  const std::vector<AtomSet> maximal = maximal_consistent_sets(table);
  for (std::uint32_t bits = 0; bits < table.language().subset_count(); ++bits) {
    const AtomSet a(bits);
    AtomSet meet = table.full();
    for (AtomSet m : maximal)
      if (a.subset_of(m)) meet &= m;
    if (meet != cn_op(a))
      return fails(property::kCnViaMaximal, {bits},
                   "Cn(A) = " + table.language().render(cn_op(a)) + " but the maximal consistent supersets meet in " +
                       table.language().render(meet) + " for A = " + table.language().render(a));
  }
  return holds(property::kCnViaMaximal);
}

}  // namespace nml::klm
