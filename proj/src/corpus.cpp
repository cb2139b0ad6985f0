#include "nml/corpus.hpp"

#include <map>

#include "nml/error.hpp"

namespace nml::corpus {

const char* to_string(Mode m) {
  switch (m) {
    case Mode::FcModel: return "fc-model";
    case Mode::Rejection: return "rejection";
    case Mode::Quantum: return "quantum";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "fc-model") return Mode::FcModel;
  if (text == "rejection") return Mode::Rejection;
  if (text == "quantum") return Mode::Quantum;
  return std::nullopt;
}

void CorpusSpec::validate() const {
  if (atoms < 1 || atoms > kMaxAtoms)
    throw InputError("atom count must be between 1 and " + std::to_string(kMaxAtoms));
  if (count < 1 || count > kMaxCount)
    throw InputError("instance count must be between 1 and " + std::to_string(kMaxCount));
}

std::vector<std::string> default_atom_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string name(1, static_cast<char>('a' + i % 26));
    if (i >= 26) name += std::to_string(i / 26);
    out.push_back(std::move(name));
  }
  return out;
}

AtomLanguage default_language(std::size_t n) { return AtomLanguage(default_atom_names(n)); }

namespace {

std::uint32_t uniform_bits(Rng& rng, std::size_t n) {
  return static_cast<std::uint32_t>(rng() & ((std::uint64_t{1} << n) - 1));
}

}  // namespace

ConsequenceTable uniform_table(const AtomLanguage& language, Rng& rng) {
  return ConsequenceTable::from_function(language, [&](AtomSet) { return AtomSet(uniform_bits(rng, language.size())); });
}

ConsequenceTable inclusive_table(const AtomLanguage& language, Rng& rng) {
  return ConsequenceTable::from_function(language,
                                         [&](AtomSet a) { return a | AtomSet(uniform_bits(rng, language.size())); });
}

RejectionResult rejection_c_logics(const AtomLanguage& language, std::size_t count, Rng& rng, Proposal proposal,
                                   std::size_t max_attempts) {
  RejectionResult out;
  while (out.accepted.size() < count && out.attempts < max_attempts) {
    ++out.attempts;
    ConsequenceTable t = proposal == Proposal::Uniform ? uniform_table(language, rng) : inclusive_table(language, rng);
    if (is_c_logic(t)) out.accepted.push_back(std::move(t));
  }
  return out;
}

namespace {

/// Values S that f(X) may take given f on every proper subset of X.
std::vector<ModelMask> candidates(const std::vector<ModelMask>& f, ModelMask x, bool restricted) {
  std::vector<ModelMask> out{x};
  if (x.empty()) return out;
  for_each_submask(x, [&](ModelMask s) {
    if (s == x || (restricted && s.empty())) return;
    // every Y with S ⊆ Y ⊊ X must already choose S
    const bool ok = !any_between(s, x, [&](ModelMask y) { return y != x && f[y.bits] != s; });
    if (ok) out.push_back(s);
  });
  return out;
}

}  // namespace

std::vector<ModelMask> random_choice_function(std::size_t model_count, Rng& rng, bool restricted) {
  if (model_count > 12) throw ContractError("random_choice_function supports at most 12 models");
  const std::size_t total = std::size_t{1} << model_count;
  std::vector<ModelMask> f(total);
  for (std::uint32_t bits = 1; bits < total; ++bits) {
    const ModelMask x(bits);
    const auto options = candidates(f, x, restricted);
    // Keep X with probability 1/2 so that shrinking and identity both occur.
    if (options.size() == 1 || (rng() & 1u)) {
      f[bits] = x;
    } else {
      f[bits] = options[1 + rng() % (options.size() - 1)];
    }
  }
  return f;
}

std::vector<ModelMask> random_contraction(std::size_t model_count, Rng& rng) {
  const std::size_t total = std::size_t{1} << model_count;
  std::vector<ModelMask> f(total);
  for (std::uint32_t bits = 1; bits < total; ++bits) {
    std::uint32_t pick = 0;
    while (pick == 0) pick = static_cast<std::uint32_t>(rng()) & bits;
    f[bits] = ModelMask(pick);
  }
  return f;
}

std::size_t enumerate_choice_functions(std::size_t model_count, bool restricted,
                                       const std::function<void(const std::vector<ModelMask>&)>& fn) {
  if (model_count > 5) throw ContractError("enumerate_choice_functions supports at most 5 models");
  const std::size_t total = std::size_t{1} << model_count;
  std::vector<ModelMask> f(total);
  std::size_t count = 0;
  std::function<void(std::uint32_t)> dfs = [&](std::uint32_t bits) {
    if (bits == total) {
      ++count;
      fn(f);
      return;
    }
    for (ModelMask s : candidates(f, ModelMask(bits), restricted)) {
      f[bits] = s;
      dfs(bits + 1);
    }
  };
  dfs(0);
  return count;
}

FCModel random_fc_model(const AtomLanguage& language, Rng& rng, std::size_t max_models,
                        std::optional<bool> restricted) {
  if (max_models < 1 || max_models > 12) throw ContractError("random_fc_model: max_models must be 1..12");
  const std::size_t m = 1 + rng() % max_models;
  std::vector<std::string> names;
  std::vector<AtomSet> sat;
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back("m" + std::to_string(i));
    sat.emplace_back(uniform_bits(rng, language.size()));
  }
  ModelWorld world(language, std::move(names), std::move(sat));
  const bool is_restricted = restricted.value_or((rng() & 1u) != 0);
  const auto f = random_choice_function(m, rng, is_restricted);
  std::map<ModelMask, ModelMask> values;
  for (std::uint32_t bits = 0; bits < f.size(); ++bits) values[ModelMask(bits)] = f[bits];
  return make_table_model(std::move(world), values, is_restricted);
}

quantum::QuantumInstance random_quantum_instance(const AtomLanguage& language, Rng& rng,
                                                 std::optional<std::size_t> dim) {
  using quantum::Vec;
  const std::size_t d = dim.value_or(2 + rng() % 3);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_vec = [&] {
    Vec v(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normal(rng);
    return v;
  };
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < d; ++i) basis.push_back(random_vec());

  std::vector<quantum::Subspace> spaces;
  for (std::size_t a = 0; a < language.size(); ++a) {
    std::vector<Vec> span;
    if (rng() % 4 == 0) {
      span.push_back(random_vec());
    } else {
      const std::uint64_t pick = rng() & ((std::uint64_t{1} << d) - 1);
      for (std::size_t i = 0; i < d; ++i)
        if ((pick >> i) & 1u) span.push_back(basis[i]);
    }
    spaces.push_back(quantum::orthonormalize(span, d));
  }

  Vec h = random_vec();
  if (rng() % 3 == 0) {
    const auto& s = spaces[rng() % spaces.size()];
    const Vec inside = quantum::project(s, h);
    if (inside.norm() > 1e-3) h = inside;
  }
  return quantum::QuantumInstance(d, std::move(h), language.atoms(), std::move(spaces));
}

}  // namespace nml::corpus
