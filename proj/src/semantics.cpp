#include "nml/semantics.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <unordered_set>

#include "nml/error.hpp"

namespace nml {

// ---------------------------------------------------------------------------
// ModelWorld and the Galois pair
// ---------------------------------------------------------------------------

ModelWorld::ModelWorld(AtomLanguage language, std::vector<std::string> models,
                       std::vector<AtomSet> sat)
    : language_(std::move(language)), models_(std::move(models)), sat_(std::move(sat)) {
  if (models_.size() > kMaxModels)
    throw InputError("world has " + std::to_string(models_.size()) + " models; at most " +
                     std::to_string(kMaxModels) + " are supported");
  if (sat_.size() != models_.size())
    throw InputError("satisfaction relation has " + std::to_string(sat_.size()) +
                     " rows for " + std::to_string(models_.size()) + " models");
  std::unordered_set<std::string> seen;
  for (const auto& m : models_)
    if (!seen.insert(m).second) throw InputError("duplicate model name '" + m + "'");
  for (AtomSet s : sat_)
    if (!s.subset_of(language_.full())) throw InputError("model satisfies atoms outside the language");
}

std::optional<std::size_t> ModelWorld::model_index(const std::string& name) const {
  for (std::size_t i = 0; i < models_.size(); ++i)
    if (models_[i] == name) return i;
  return std::nullopt;
}

std::string ModelWorld::render(ModelMask x) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < models_.size(); ++i) {
    if (!x.contains(static_cast<unsigned>(i))) continue;
    if (!first) out += ',';
    out += models_[i];
    first = false;
  }
  return out + "}";
}

ModelMask mod_of(const ModelWorld& world, AtomSet a) {
  ModelMask out;
  for (std::size_t m = 0; m < world.model_count(); ++m)
    if (a.subset_of(world.satisfied(m))) out |= ModelMask::singleton(static_cast<unsigned>(m));
  return out;
}

AtomSet theory_of(const ModelWorld& world, ModelMask x) {
  AtomSet out = world.language().full();
  for (std::size_t m = 0; m < world.model_count(); ++m)
    if (x.contains(static_cast<unsigned>(m))) out &= world.satisfied(m);
  return out;
}

namespace {

constexpr std::uint64_t kExhaustivePairLimit = std::uint64_t{1} << 24;

/// Calls fn(i, j) over all pairs of subsets of a carrier of size `count`,
/// or over `samples` random pairs when 4^count exceeds the limit. Stops when
/// fn returns true. Returns {stopped, sampled}.
template <class Fn>
std::pair<bool, bool> scan_pairs(std::size_t bits, std::mt19937_64& rng, Fn&& fn) {
  const std::uint64_t count = std::uint64_t{1} << bits;
  if (count * count <= kExhaustivePairLimit) {
    for (std::uint64_t i = 0; i < count; ++i)
      for (std::uint64_t j = 0; j < count; ++j)
        if (fn(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j))) return {true, false};
    return {false, false};
  }
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(count - 1));
  for (std::size_t s = 0; s < kChoiceSamplePairs; ++s)
    if (fn(pick(rng), pick(rng))) return {true, true};
  return {false, true};
}

}  // namespace

PropertyReport check_galois(const ModelWorld& w) {
  const auto& L = w.language();
  auto hat = [&](std::uint32_t a) { return mod_of(w, AtomSet(a)); };
  auto bar = [&](std::uint32_t x) { return theory_of(w, ModelMask(x)); };
  std::mt19937_64 rng(0x9a1015);

  std::string failure;
  std::vector<std::uint32_t> witness;
  auto atom_pair_law = [&](std::uint32_t a, std::uint32_t b) {
    AtomSet A(a), B(b);
    const char* law = nullptr;
    if (!A.subset_of(bar(hat(a).bits))) law = "A ⊆ bar(hat(A))";
    else if (hat(a | b) != (hat(a) & hat(b))) law = "hat(A ∪ B) = hat(A) ∩ hat(B)";
    else if (A.subset_of(B) && !hat(b).subset_of(hat(a))) law = "A ⊆ B ⇒ hat(B) ⊆ hat(A)";
    else if (A.subset_of(B) && !bar(hat(a).bits).subset_of(bar(hat(b).bits)))
      law = "A ⊆ B ⇒ bar(hat(A)) ⊆ bar(hat(B))";
    else if (hat(a) != mod_of(w, bar(hat(a).bits))) law = "hat(A) = hat(bar(hat(A)))";
    if (!law) return false;
    failure = std::string(law) + " at A=" + L.render(A) + ", B=" + L.render(B);
    witness = {0, a, b};
    return true;
  };
  auto model_pair_law = [&](std::uint32_t x, std::uint32_t y) {
    ModelMask X(x), Y(y);
    const char* law = nullptr;
    if (!X.subset_of(mod_of(w, bar(x)))) law = "X ⊆ hat(bar(X))";
    else if (bar(x | y) != (bar(x) & bar(y))) law = "bar(X ∪ Y) = bar(X) ∩ bar(Y)";
    else if (X.subset_of(Y) && !bar(y).subset_of(bar(x))) law = "X ⊆ Y ⇒ bar(Y) ⊆ bar(X)";
    else if (X.subset_of(Y) && !mod_of(w, bar(x)).subset_of(mod_of(w, bar(y))))
      law = "X ⊆ Y ⇒ hat(bar(X)) ⊆ hat(bar(Y))";
    else if (bar(x) != theory_of(w, mod_of(w, bar(x)))) law = "bar(X) = bar(hat(bar(X)))";
    if (!law) return false;
    failure = std::string(law) + " at X=" + w.render(X) + ", Y=" + w.render(Y);
    witness = {1, x, y};
    return true;
  };

  auto [atom_bad, atom_sampled] = scan_pairs(L.size(), rng, atom_pair_law);
  if (atom_bad) return fails(property::kGalois, witness, failure, atom_sampled ? "sampled" : "exhaustive");
  auto [model_bad, model_sampled] = scan_pairs(w.model_count(), rng, model_pair_law);
  const std::string scope = (atom_sampled || model_sampled) ? "sampled" : "exhaustive";
  if (model_bad) return fails(property::kGalois, witness, failure, scope);
  return holds(property::kGalois, scope);
}

std::vector<ModelMask> definable_sets(const ModelWorld& world) {
  std::vector<ModelMask> out;
  for (std::uint32_t a = 0; a < world.language().subset_count(); ++a)
    out.push_back(mod_of(world, AtomSet(a)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// ChoiceFunction
// ---------------------------------------------------------------------------

ChoiceFunction::ChoiceFunction(ExtensionPolicy policy, std::vector<ModelMask> definable,
                               std::map<ModelMask, ModelMask> base,
                               std::map<ModelMask, ModelMask> extra)
    : policy_(policy), definable_(std::move(definable)), base_(std::move(base)), extra_(std::move(extra)) {
  std::sort(definable_.begin(), definable_.end());
  if (base_.size() != definable_.size())
    throw InputError("choice function base must cover exactly the definable sets");
  for (ModelMask d : definable_)
    if (!base_.count(d)) throw InputError("choice function base is missing a definable set");
  if (policy_ == ExtensionPolicy::TwoCase && !extra_.empty())
    throw InputError("two-case choice functions take values on definable sets only");
  for (const auto& [x, v] : extra_)
    if (base_.count(x)) throw InputError("explicit entry duplicates a definable set");
}

ChoiceFunction::ChoiceFunction(const ChoiceFunction& o)
    : policy_(o.policy_), definable_(o.definable_), base_(o.base_), extra_(o.extra_) {}

ChoiceFunction& ChoiceFunction::operator=(const ChoiceFunction& o) {
  if (this != &o) {
    policy_ = o.policy_;
    definable_ = o.definable_;
    base_ = o.base_;
    extra_ = o.extra_;
    std::unique_lock lock(memo_mutex_);
    memo_.clear();
  }
  return *this;
}

ModelMask ChoiceFunction::evaluate(ModelMask x) const {
  if (auto it = base_.find(x); it != base_.end()) return it->second;
  if (policy_ == ExtensionPolicy::ExplicitTable) {
    auto it = extra_.find(x);
    return it != extra_.end() ? it->second : x;
  }
  for (ModelMask y : definable_) {
    ModelMask fy = base_.at(y);
    if (fy.subset_of(x) && x.subset_of(y)) return fy;
  }
  return x;
}

ModelMask ChoiceFunction::operator()(ModelMask x) const {
  if (policy_ == ExtensionPolicy::ExplicitTable) return evaluate(x);
  {
    std::shared_lock lock(memo_mutex_);
    if (auto it = memo_.find(x); it != memo_.end()) return it->second;
  }
  ModelMask v = evaluate(x);
  std::unique_lock lock(memo_mutex_);
  memo_.emplace(x, v);
  return v;
}

std::vector<ModelMask> ChoiceFunction::materialize(std::size_t model_count) const {
  std::vector<ModelMask> out(std::size_t{1} << model_count);
  for (std::uint32_t x = 0; x < out.size(); ++x) out[x] = evaluate(ModelMask(x));
  return out;
}

FCModel make_table_model(ModelWorld world, const std::map<ModelMask, ModelMask>& values,
                         bool restricted) {
  auto definable = definable_sets(world);
  std::map<ModelMask, ModelMask> base, extra;
  for (ModelMask d : definable) base[d] = d;
  for (const auto& [x, v] : values) {
    if (!x.subset_of(world.all_models()) || !v.subset_of(world.all_models()))
      throw InputError("choice entry mentions models outside the world");
    (base.count(x) ? base : extra)[x] = v;
  }
  ChoiceFunction f(ExtensionPolicy::ExplicitTable, std::move(definable), std::move(base),
                   std::move(extra));
  return FCModel{std::move(world), std::move(f), restricted};
}

ConsequenceTable induced_consequence(const FCModel& fcm) {
  return ConsequenceTable::from_function(fcm.world.language(), [&](AtomSet a) {
    return theory_of(fcm.world, fcm.f(mod_of(fcm.world, a)));
  });
}

// ---------------------------------------------------------------------------
// Choice-function axioms
// ---------------------------------------------------------------------------

namespace {

struct ChoiceScan {
  std::optional<std::vector<std::uint32_t>> contraction, consistency, cumulativity,
      monotonicity, coherence;
};

// Coherence fails at Y iff some x ∈ f(Y) ∩ Y has a subset X ⊆ Y with
// x ∈ X and x ∉ f(X). For each x this is a subset-OR over the lattice.
std::optional<std::vector<std::uint32_t>> coherence_violation(const std::vector<ModelMask>& F,
                                                              unsigned models) {
  const std::uint32_t count = static_cast<std::uint32_t>(F.size());
  std::vector<char> bad_below(count);
  std::optional<std::pair<std::uint32_t, unsigned>> first;  // (Y, x), minimal Y
  for (unsigned x = 0; x < models; ++x) {
    const std::uint32_t xb = 1u << x;
    for (std::uint32_t s = 0; s < count; ++s) bad_below[s] = (s & xb) && !(F[s].bits & xb);
    for (unsigned i = 0; i < models; ++i)
      for (std::uint32_t s = 0; s < count; ++s)
        if (s & (1u << i)) bad_below[s] |= bad_below[s & ~(1u << i)];
    for (std::uint32_t y = 0; y < count; ++y) {
      if (first && first->first <= y) break;
      if ((F[y].bits & y & xb) && bad_below[y]) first = std::make_pair(y, x);
    }
  }
  if (!first) return std::nullopt;
  auto [y, x] = *first;
  const std::uint32_t xb = 1u << x;
  std::uint32_t witness_x = 0;
  any_submask(ModelMask(y), [&](ModelMask s) {
    if ((s.bits & xb) && !(F[s.bits].bits & xb)) { witness_x = s.bits; return true; }
    return false;
  });
  return std::vector<std::uint32_t>{witness_x, y};
}

ChoiceScan scan_exhaustive(const std::vector<ModelMask>& F, unsigned models) {
  ChoiceScan s;
  for (std::uint32_t x = 0; x < F.size(); ++x) {
    const ModelMask X(x), fx = F[x];
    if (!s.contraction && !fx.subset_of(X)) s.contraction = std::vector<std::uint32_t>{x};
    if (!s.consistency && fx.empty() && !X.empty()) s.consistency = std::vector<std::uint32_t>{x};
    if (!fx.subset_of(X) || (s.cumulativity && s.monotonicity)) continue;
    any_between(fx, X, [&](ModelMask y) {
      const ModelMask fy = F[y.bits];
      if (!s.cumulativity && fy != fx) s.cumulativity = std::vector<std::uint32_t>{x, y.bits};
      if (!s.monotonicity && !fy.subset_of(fx)) s.monotonicity = std::vector<std::uint32_t>{x, y.bits};
      return s.cumulativity && s.monotonicity;
    });
  }
  s.coherence = coherence_violation(F, models);
  return s;
}

ChoiceScan scan_sampled(const ChoiceFunction& f, unsigned models, std::uint64_t seed) {
  ChoiceScan s;
  std::mt19937_64 rng(seed);
  const std::uint32_t all = ModelMask::full(models).bits;
  auto random_subset = [&](std::uint32_t of) { return static_cast<std::uint32_t>(rng()) & of; };
  for (std::size_t i = 0; i < kChoiceSamplePairs; ++i) {
    const ModelMask X(random_subset(all)), fx = f(X);
    if (!s.contraction && !fx.subset_of(X)) s.contraction = std::vector<std::uint32_t>{X.bits};
    if (!s.consistency && fx.empty() && !X.empty()) s.consistency = std::vector<std::uint32_t>{X.bits};
    if (fx.subset_of(X)) {
      const ModelMask Y = fx | ModelMask(random_subset((X - fx).bits)), fy = f(Y);
      if (!s.cumulativity && fy != fx) s.cumulativity = std::vector<std::uint32_t>{X.bits, Y.bits};
      if (!s.monotonicity && !fy.subset_of(fx)) s.monotonicity = std::vector<std::uint32_t>{X.bits, Y.bits};
    }
    const ModelMask Y(random_subset(all)), Xs(random_subset(Y.bits));
    if (!s.coherence && !(Xs & f(Y)).subset_of(f(Xs)))
      s.coherence = std::vector<std::uint32_t>{Xs.bits, Y.bits};
  }
  return s;
}

bool violates(const std::string& p, const std::vector<std::uint32_t>& w,
              const std::function<ModelMask(ModelMask)>& f) {
  const ModelMask X(w.at(0));
  if (p == property::kContraction) return !f(X).subset_of(X);
  if (p == property::kConsistency) return f(X).empty() && !X.empty();
  const ModelMask Y(w.at(1));
  if (p == property::kCoherence) return X.subset_of(Y) && !(X & f(Y)).subset_of(f(X));
  if (!(f(X).subset_of(Y) && Y.subset_of(X))) return false;
  if (p == property::kLocalCumulativity) return f(Y) != f(X);
  if (p == property::kLocalMonotonicity) return !f(Y).subset_of(f(X));
  return false;
}

}  // namespace

std::vector<PropertyReport> check_choice_axioms(const FCModel& fcm, std::uint64_t sample_seed) {
  const auto models = static_cast<unsigned>(fcm.world.model_count());
  const bool exhaustive = models <= kExhaustiveModelLimit;
  const ChoiceScan scan = exhaustive ? scan_exhaustive(fcm.f.materialize(models), models)
                                     : scan_sampled(fcm.f, models, sample_seed);
  const std::string scope =
      exhaustive ? "exhaustive" : "sampled: " + std::to_string(kChoiceSamplePairs) + " seeded pairs";

  auto make = [&](const char* name, const std::optional<std::vector<std::uint32_t>>& w) {
    if (!w) return holds(name, scope);
    std::string detail = "X=" + fcm.world.render(ModelMask(w->at(0)));
    if (w->size() > 1) detail += ", Y=" + fcm.world.render(ModelMask(w->at(1)));
    detail += ", f(X)=" + fcm.world.render(fcm.f(ModelMask(w->at(0))));
    if (w->size() > 1) detail += ", f(Y)=" + fcm.world.render(fcm.f(ModelMask(w->at(1))));
    return fails(name, *w, detail, scope);
  };
  return {make(property::kContraction, scan.contraction),
          make(property::kLocalCumulativity, scan.cumulativity),
          make(property::kConsistency, scan.consistency),
          make(property::kCoherence, scan.coherence),
          make(property::kLocalMonotonicity, scan.monotonicity)};
}

bool witness_violates(const FCModel& fcm, const PropertyReport& r) {
  if (r.holds()) return false;
  return violates(r.property, r.witness, [&](ModelMask x) { return fcm.f(x); });
}

// ---------------------------------------------------------------------------
// Representation
// ---------------------------------------------------------------------------

FCModel represent(const ConsequenceTable& table) {
  for (const auto& r : {check_inclusion(table), check_cumulativity(table)})
    if (!r.holds())
      throw ContractError("represent: table is not a C-logic: " + r.property + " fails (" +
                          r.detail + ")");

  const auto consistent = theories(table, /*consistent_only=*/true);
  if (consistent.size() > ModelWorld::kMaxModels)
    throw ContractError("represent: " + std::to_string(consistent.size()) +
                        " consistent theories exceed the model limit");
  std::vector<std::string> names;
  for (AtomSet t : consistent) names.push_back(table.language().render(t));
  ModelWorld world(table.language(), std::move(names), consistent);

  std::map<ModelMask, ModelMask> base;
  for (std::uint32_t a = 0; a < table.language().subset_count(); ++a) {
    const ModelMask x = mod_of(world, AtomSet(a));
    const ModelMask value = mod_of(world, table(AtomSet(a)));
    auto [it, inserted] = base.emplace(x, value);
    if (!inserted && it->second != value)
      throw std::logic_error("represent: f is not well defined on " + world.render(x));
  }
  auto definable = definable_sets(world);
  ChoiceFunction f(ExtensionPolicy::TwoCase, std::move(definable), std::move(base));
  return FCModel{std::move(world), std::move(f), /*restricted=*/true};
}

PropertyReport f_prime_well_defined(const FCModel& fcm, ModelMask x) {
  if (fcm.f.policy() != ExtensionPolicy::TwoCase)
    throw ContractError("f_prime_well_defined: choice function is not two-case");
  std::vector<std::uint32_t> sandwiches;
  std::optional<ModelMask> value;
  bool agree = true;
  for (ModelMask y : fcm.f.definable()) {
    const ModelMask fy = fcm.f.base().at(y);
    if (!(fy.subset_of(x) && x.subset_of(y))) continue;
    sandwiches.push_back(y.bits);
    if (value && *value != fy) agree = false;
    if (!value) value = fy;
  }
  if (!agree) {
    std::string detail = "X=" + fcm.world.render(x) + " has definable sandwiches with different f:";
    for (auto y : sandwiches)
      detail += " f(" + fcm.world.render(ModelMask(y)) + ")=" + fcm.world.render(fcm.f.base().at(ModelMask(y)));
    return fails(property::kFPrimeWellDefined, sandwiches, detail);
  }
  auto r = holds(property::kFPrimeWellDefined);
  r.witness = sandwiches;
  if (fcm.f.is_definable(x))
    r.detail = "X definable: f'(X) = f(X) = " + fcm.world.render(*value);
  else if (value)
    r.detail = "case 1: " + std::to_string(sandwiches.size()) + " definable sandwich(es), f'(X) = " +
               fcm.world.render(*value);
  else
    r.detail = "case 2: no definable Y with f(Y) ⊆ X ⊆ Y, f'(X) = X";
  return r;
}

}  // namespace nml
