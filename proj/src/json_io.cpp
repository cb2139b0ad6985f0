#include "nml/json_io.hpp"

#include <map>

#include "nml/error.hpp"

namespace nml::io {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

const Json& field(const Json& j, const char* name, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) bad(path, std::string("missing field \"") + name + "\"");
  return *it;
}

std::vector<std::string> string_list(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) bad(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

AtomSet atom_set(const AtomLanguage& lang, const std::vector<std::string>& names, const std::string& path) {
  AtomSet out;
  for (const auto& name : names) {
    auto idx = lang.index_of(name);
    if (!idx) bad(path, "unknown atom \"" + name + "\"");
    const AtomSet bit = AtomSet::singleton(static_cast<unsigned>(*idx));
    if (!(out & bit).empty()) bad(path, "atom \"" + name + "\" listed twice");
    out |= bit;
  }
  return out;
}

ModelMask model_set(const ModelWorld& world, const std::vector<std::string>& names, const std::string& path) {
  ModelMask out;
  for (const auto& name : names) {
    auto idx = world.model_index(name);
    if (!idx) bad(path, "unknown model \"" + name + "\"");
    out |= ModelMask::singleton(static_cast<unsigned>(*idx));
  }
  return out;
}

std::vector<std::string> split_key(const std::string& key) {
  std::vector<std::string> out;
  if (key.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = key.find(',', start);
    out.push_back(key.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Json names_json(const std::vector<std::string>& names) {
  Json arr = Json::array();
  for (const auto& n : names) arr.push_back(n);
  return arr;
}

Json model_names_json(const ModelWorld& world, ModelMask x) {
  Json arr = Json::array();
  for (std::size_t m = 0; m < world.model_count(); ++m)
    if (x.contains(static_cast<unsigned>(m))) arr.push_back(world.model_name(m));
  return arr;
}

AtomLanguage language_from(const Json& j, const std::string& path) {
  return AtomLanguage(string_list(field(j, "atoms", path), path + ".atoms"));
}

std::vector<double> number_list(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) bad(path + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

}  // namespace

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

ConsequenceTable table_from_json(const Json& j) {
  AtomLanguage lang = language_from(j, "table file");
  const Json& rows_json = field(j, "table", "table file");
  if (!rows_json.is_object()) bad("table", "expected an object keyed by subsets");
  std::vector<std::optional<AtomSet>> rows(lang.subset_count());
  for (auto it = rows_json.begin(); it != rows_json.end(); ++it) {
    const std::string path = "table[\"" + it.key() + "\"]";
    const AtomSet key = atom_set(lang, split_key(it.key()), path);
    if (rows[key.bits]) bad(path, "subset " + lang.render(key) + " given twice");
    rows[key.bits] = atom_set(lang, string_list(it.value(), path), path);
  }
  std::vector<AtomSet> dense;
  for (std::uint32_t bits = 0; bits < rows.size(); ++bits) {
    if (!rows[bits]) bad("table", "missing key \"" + lang.key(AtomSet(bits)) + "\"");
    dense.push_back(*rows[bits]);
  }
  return ConsequenceTable(std::move(lang), std::move(dense));
}

Json table_to_json(const ConsequenceTable& table) {
  const AtomLanguage& lang = table.language();
  Json rows = Json::object();
  for (std::uint32_t bits = 0; bits < lang.subset_count(); ++bits)
    rows[lang.key(AtomSet(bits))] = names_json(lang.names(table(AtomSet(bits))));
  return Json{{"atoms", names_json(lang.atoms())}, {"table", std::move(rows)}};
}

FCModel fc_model_from_json(const Json& j) {
  AtomLanguage lang = language_from(j, "model file");
  const Json& models_json = field(j, "models", "model file");
  if (!models_json.is_array()) bad("models", "expected an array");
  std::vector<std::string> names;
  std::vector<AtomSet> sat;
  for (std::size_t i = 0; i < models_json.size(); ++i) {
    const std::string path = "models[" + std::to_string(i) + "]";
    const Json& name = field(models_json[i], "name", path);
    if (!name.is_string()) bad(path + ".name", "expected a string");
    names.push_back(name.get<std::string>());
    sat.push_back(atom_set(lang, string_list(field(models_json[i], "sat", path), path + ".sat"), path + ".sat"));
  }
  ModelWorld world(std::move(lang), std::move(names), std::move(sat));

  bool restricted = false;
  if (auto it = j.find("restricted"); it != j.end()) {
    if (!it->is_boolean()) bad("restricted", "expected a boolean");
    restricted = it->get<bool>();
  }

  const Json& choice = field(j, "choice", "model file");
  const Json& mode = field(choice, "mode", "choice");
  if (!mode.is_string()) bad("choice.mode", "expected a string");

  std::map<ModelMask, ModelMask> entries;
  if (auto it = choice.find("entries"); it != choice.end()) {
    if (!it->is_array()) bad("choice.entries", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "choice.entries[" + std::to_string(i) + "]";
      const Json& e = (*it)[i];
      const ModelMask x = model_set(world, string_list(field(e, "set", path), path + ".set"), path + ".set");
      const ModelMask v = model_set(world, string_list(field(e, "value", path), path + ".value"), path + ".value");
      if (entries.count(x)) bad(path, "set " + world.render(x) + " listed twice");
      entries[x] = v;
    }
  }

  const std::string m = mode.get<std::string>();
  if (m == "table") {
    if (auto it = choice.find("default"); it != choice.end() && *it != "identity")
      bad("choice.default", "only \"identity\" is supported");
    return make_table_model(std::move(world), entries, restricted);
  }
  if (m == "two-case") {
    auto definable = definable_sets(world);
    std::map<ModelMask, ModelMask> base;
    for (ModelMask d : definable) base[d] = d;
    for (const auto& [x, v] : entries) {
      if (!base.count(x)) bad("choice.entries", "two-case entries must name definable sets; " + world.render(x) + " is not");
      base[x] = v;
    }
    ChoiceFunction f(ExtensionPolicy::TwoCase, std::move(definable), std::move(base));
    return FCModel{std::move(world), std::move(f), restricted};
  }
  bad("choice.mode", "expected \"table\" or \"two-case\", got \"" + m + "\"");
}

Json fc_model_to_json(const FCModel& fcm) {
  const ModelWorld& world = fcm.world;
  Json models = Json::array();
  for (std::size_t m = 0; m < world.model_count(); ++m)
    models.push_back(Json{{"name", world.model_name(m)},
                          {"sat", names_json(world.language().names(world.satisfied(m)))}});
  Json entries = Json::array();
  auto add = [&](const std::map<ModelMask, ModelMask>& values) {
    for (const auto& [x, v] : values)
      entries.push_back(Json{{"set", model_names_json(world, x)}, {"value", model_names_json(world, v)}});
  };
  add(fcm.f.base());
  add(fcm.f.extra());
  Json choice;
  if (fcm.f.policy() == ExtensionPolicy::TwoCase) {
    choice = Json{{"mode", "two-case"}, {"entries", std::move(entries)}};
  } else {
    choice = Json{{"mode", "table"}, {"entries", std::move(entries)}, {"default", "identity"}};
  }
  return Json{{"atoms", names_json(world.language().atoms())},
              {"models", std::move(models)},
              {"restricted", fcm.restricted},
              {"choice", std::move(choice)}};
}

quantum::QuantumInstance quantum_from_json(const Json& j) {
  const Json& dim_json = field(j, "dim", "instance");
  if (!dim_json.is_number_integer() || dim_json.get<long long>() < 1)
    bad("dim", "expected a positive integer");
  const auto dim = static_cast<std::size_t>(dim_json.get<long long>());
  if (dim > quantum::kMaxDim) bad("dim", "must be at most " + std::to_string(quantum::kMaxDim));

  auto to_vec = [&](const std::vector<double>& xs, const std::string& path) {
    if (xs.size() != dim)
      bad(path, "has " + std::to_string(xs.size()) + " entries, expected " + std::to_string(dim));
    quantum::Vec v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) v[static_cast<Eigen::Index>(i)] = xs[i];
    return v;
  };
  quantum::Vec state = to_vec(number_list(field(j, "state", "instance"), "state"), "state");

  double tol = quantum::kDefaultTolerance;
  if (auto it = j.find("tolerance"); it != j.end()) {
    if (!it->is_number()) bad("tolerance", "expected a number");
    tol = it->get<double>();
  }

  const Json& subs = field(j, "subspaces", "instance");
  if (!subs.is_object() || subs.empty()) bad("subspaces", "expected a non-empty object");
  std::vector<std::string> names;
  std::vector<quantum::Subspace> spaces;
  for (auto it = subs.begin(); it != subs.end(); ++it) {
    const std::string path = "subspaces[\"" + it.key() + "\"]";
    if (!it.value().is_array()) bad(path, "expected an array of vectors");
    std::vector<quantum::Vec> span;
    for (std::size_t i = 0; i < it.value().size(); ++i) {
      const std::string vpath = path + "[" + std::to_string(i) + "]";
      span.push_back(to_vec(number_list(it.value()[i], vpath), vpath));
    }
    names.push_back(it.key());
    spaces.push_back(quantum::orthonormalize(span, dim));
  }
  return quantum::QuantumInstance(dim, std::move(state), std::move(names), std::move(spaces), tol);
}

Json quantum_to_json(const quantum::QuantumInstance& q) {
  auto vec_json = [](const quantum::Vec& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
  };
  Json subs = Json::object();
  for (std::size_t a = 0; a < q.atom_count(); ++a) {
    Json cols = Json::array();
    const auto& onb = q.subspace(a).basis();
    for (Eigen::Index c = 0; c < onb.cols(); ++c) cols.push_back(vec_json(onb.col(c)));
    subs[q.language().name(a)] = std::move(cols);
  }
  return Json{{"dim", q.dim()}, {"state", vec_json(q.state())}, {"tolerance", q.tolerance()}, {"subspaces", std::move(subs)}};
}

Json report_to_json(const PropertyReport& r) {
  Json j{{"property", r.property}, {"verdict", to_string(r.verdict)}, {"scope", r.scope}};
  if (!r.holds()) j["witness"] = r.witness;
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

PropertyReport report_from_json(const Json& j) {
  PropertyReport r;
  const Json& property = field(j, "property", "report");
  const Json& verdict = field(j, "verdict", "report");
  const Json& scope = field(j, "scope", "report");
  if (!property.is_string() || !verdict.is_string() || !scope.is_string())
    bad("report", "property, verdict and scope must be strings");
  r.property = property.get<std::string>();
  r.scope = scope.get<std::string>();
  const std::string v = verdict.get<std::string>();
  if (v == "holds") {
    r.verdict = Verdict::Holds;
  } else if (v == "fails") {
    r.verdict = Verdict::Fails;
  } else {
    bad("report.verdict", "expected \"holds\" or \"fails\"");
  }
  if (auto it = j.find("witness"); it != j.end()) {
    if (!it->is_array()) bad("report.witness", "expected an array");
    for (const auto& w : *it) {
      if (!w.is_number_unsigned()) bad("report.witness", "expected non-negative integers");
      r.witness.push_back(w.get<std::uint32_t>());
    }
  }
  if (auto it = j.find("detail"); it != j.end()) {
    if (!it->is_string()) bad("report.detail", "expected a string");
    r.detail = it->get<std::string>();
  }
  if (auto it = j.find("notes"); it != j.end()) r.notes = string_list(*it, "report.notes");
  return r;
}

}  // namespace nml::io
