#include "nml/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nml/builtins.hpp"
#include "nml/connectives.hpp"
#include "nml/core.hpp"
#include "nml/corpus.hpp"
#include "nml/error.hpp"
#include "nml/quantum.hpp"
#include "nml/semantics.hpp"

namespace nml::cli {

using io::Json;

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

bool RunReport::passed() const {
  for (const auto& r : reports)
    if (!r.holds()) return false;
  return true;
}

Json RunReport::to_json() const {
  Json j{{"command", command}};
  j["input_digest"] = input_digest ? Json(*input_digest) : Json(nullptr);
  if (seed) j["seed"] = *seed;
  if (rng) j["rng"] = *rng;
  Json rs = Json::array();
  for (const auto& r : reports) rs.push_back(io::report_to_json(r));
  j["reports"] = std::move(rs);
  j["verdict"] = passed() ? "pass" : "fail";
  j["output"] = output;
  if (wall_time) j["wall_time_s"] = *wall_time;
  return j;
}

RunReport RunReport::from_json(const Json& j) {
  RunReport r;
  if (!j.is_object() || !j.contains("command") || !j.contains("reports") || !j.contains("verdict"))
    throw InputError("run report: missing command, reports or verdict");
  r.command = j.at("command").get<std::string>();
  if (j.contains("input_digest") && !j.at("input_digest").is_null())
    r.input_digest = j.at("input_digest").get<std::string>();
  if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("rng")) r.rng = j.at("rng").get<std::string>();
  for (const auto& rep : j.at("reports")) r.reports.push_back(io::report_from_json(rep));
  if (j.contains("output")) r.output = j.at("output");
  if (j.contains("wall_time_s")) r.wall_time = j.at("wall_time_s").get<double>();
  if ((j.at("verdict") == "pass") != r.passed()) throw InputError("run report: verdict disagrees with its reports");
  return r;
}

namespace {

struct Options {
  std::string input;
  std::string example;
  int max_loop = 4;
  int depth = 2;
  std::optional<double> tol;
  std::uint64_t seed = 42;
  std::string report_file;
  bool timing = false;
  std::size_t atoms = 3;
  std::size_t count = 100;
  std::string mode = "fc-model";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json names(const AtomLanguage& lang, AtomSet s) {
  Json arr = Json::array();
  for (const auto& n : lang.names(s)) arr.push_back(n);
  return arr;
}

Json set_list(const AtomLanguage& lang, const std::vector<AtomSet>& sets) {
  Json arr = Json::array();
  for (AtomSet s : sets) arr.push_back(names(lang, s));
  return arr;
}

void append(std::vector<PropertyReport>& to, std::vector<PropertyReport> from) {
  for (auto& r : from) to.push_back(std::move(r));
}

PropertyReport expect(const std::string& name, bool ok, const std::string& observed) {
  PropertyReport r = ok ? holds(name, "builtin") : fails(name, {}, observed, "builtin");
  if (ok) r.detail = observed;
  return r;
}

void check_max_loop(const Options& o) {
  if (o.max_loop < 2) throw InputError("--max-loop must be at least 2");
}

// check ----------------------------------------------------------------------

RunReport cmd_check(const Options& o) {
  check_max_loop(o);
  const std::string text = read_file(o.input);
  const ConsequenceTable table = io::table_from_json(io::parse_json(text, o.input));
  const AtomLanguage& lang = table.language();

  RunReport rep("check", digest(text));
  rep.reports = check_c_axioms(table);
  rep.reports.push_back(check_loop(table, o.max_loop));
  rep.reports.push_back(weak_compactness_report());

  const TheoryPoset poset = theory_order(table);
  Json leq = Json::array();
  for (std::size_t i = 0; i < poset.theories.size(); ++i)
    for (std::size_t j = 0; j < poset.theories.size(); ++j)
      if (poset.leq.get(i, j)) leq.push_back({i, j});
  Json cycle = nullptr;
  if (auto c = poset.nontrivial_leq_cycle(static_cast<std::size_t>(o.max_loop))) cycle = *c;
  rep.output = Json{{"theories", set_list(lang, poset.theories)},
                    {"consistent_theories", set_list(lang, theories(table, true))},
                    {"maximal_consistent_sets", set_list(lang, maximal_consistent_sets(table))},
                    {"theory_order",
                     Json{{"leq", std::move(leq)},
                          {"lt_plus_irreflexive", poset.lt_plus_irreflexive()},
                          {"nontrivial_leq_cycle", std::move(cycle)}}}};
  return rep;
}

// represent ------------------------------------------------------------------

RunReport cmd_represent(const Options& o) {
  const std::string text = read_file(o.input);
  const ConsequenceTable table = io::table_from_json(io::parse_json(text, o.input));
  RunReport rep("represent", digest(text));

  const PropertyReport inclusion = check_inclusion(table);
  const PropertyReport cumulativity = check_cumulativity(table);
  if (!inclusion.holds() || !cumulativity.holds()) {
    rep.reports = {inclusion, cumulativity};
    rep.output = Json{{"error", "not a C-logic"}};
    return rep;
  }

  const FCModel fcm = represent(table);
  const ConsequenceTable back = induced_consequence(fcm);
  PropertyReport round_trip = holds("Round trip");
  for (std::uint32_t m = 0; m < table.language().subset_count(); ++m) {
    const AtomSet a(m);
    if (back(a) != table(a)) {
      round_trip = fails("Round trip", {m},
                         "A=" + table.language().render(a) + ": induced " + table.language().render(back(a)) +
                             " vs table " + table.language().render(table(a)));
      break;
    }
  }
  rep.reports.push_back(round_trip);

  const auto axioms = check_choice_axioms(fcm);
  Json informational = Json::array();
  for (const auto& r : axioms) {
    if (r.property == property::kCoherence || r.property == property::kLocalMonotonicity)
      informational.push_back(io::report_to_json(r));
    else
      rep.reports.push_back(r);
  }

  if (fcm.world.model_count() <= kExhaustiveModelLimit) {
    PropertyReport wd = holds(property::kFPrimeWellDefined);
    for (std::uint32_t x = 0; x < fcm.world.model_subset_count(); ++x) {
      PropertyReport r = f_prime_well_defined(fcm, ModelMask(x));
      if (!r.holds()) {
        wd = std::move(r);
        break;
      }
    }
    rep.reports.push_back(wd);
  }

  rep.output = Json{{"model", io::fc_model_to_json(fcm)}, {"informational", std::move(informational)}};
  return rep;
}

// quantum --------------------------------------------------------------------

RunReport cmd_quantum(const Options& o) {
  check_max_loop(o);
  const std::string text = read_file(o.input);
  quantum::QuantumInstance q = io::quantum_from_json(io::parse_json(text, o.input));
  if (o.tol) q = q.with_tolerance(*o.tol);
  const ConsequenceTable table = quantum::quantum_table(q);

  RunReport rep("quantum", digest(text));
  rep.reports = check_c_axioms(table);
  rep.reports.push_back(check_loop(table, o.max_loop));
  rep.reports.push_back(quantum::check_bca(q));
  rep.reports.push_back(quantum::check_conjunction_rule(q));
  rep.output = Json{{"table", io::table_to_json(table)}, {"tolerance", q.tolerance()}};
  return rep;
}

// connectives ----------------------------------------------------------------

/// Number of formulas of depth ≤ depth over k atoms.
double closure_size(std::size_t k, int depth) {
  double prev = 0, cur = static_cast<double>(k);
  for (int d = 1; d <= depth; ++d) {
    const double next = cur + (cur - prev) + cur * cur - prev * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

RunReport cmd_connectives(const Options& o) {
  if (o.depth < 0) throw InputError("--depth must be non-negative");
  const std::string text = read_file(o.input);
  const Json j = io::parse_json(text, o.input);
  RunReport rep("connectives", digest(text));

  std::optional<ConsequenceTable> table;
  std::optional<FCModel> fcm;
  if (j.is_object() && j.contains("table")) {
    table = io::table_from_json(j);
    if (!is_c_logic(*table)) {
      rep.reports = {check_inclusion(*table), check_cumulativity(*table)};
      rep.output = Json{{"error", "not a C-logic"}};
      return rep;
    }
    fcm = represent(*table);
  } else {
    fcm = io::fc_model_from_json(j);
  }

  const AtomLanguage& lang = fcm->world.language();
  const double size = closure_size(lang.size(), o.depth);
  if (size > 5000)
    throw InputError("closure of " + std::to_string(lang.size()) + " atoms at depth " + std::to_string(o.depth) +
                     " has " + std::to_string(static_cast<long long>(size)) + " formulas; the limit is 5000");
  const ClosedLanguage closed(lang, o.depth);

  if (table) rep.reports.push_back(conservative_extension_check(*table, o.depth));
  append(rep.reports, check_connective_rules(*fcm, closed));
  if (lang.size() <= 6) rep.reports.push_back(classical_implication_checks(*fcm, closed));
  rep.output = Json{{"depth", o.depth}, {"formulas", closed.size()}};
  return rep;
}

// examples -------------------------------------------------------------------

RunReport cmd_examples(const Options& o) {
  RunReport rep("examples " + o.example);
  if (o.example == "disjunction") {
    const FCModel fcm = builtins::disjunction_model();
    const auto out = builtins::disjunction_example(fcm, o.depth < 1 ? 2 : o.depth);
    const ModelWorld& w = fcm.world;
    rep.reports = {
        expect("c ∈ C({a})", out.c_in_c_a, out.c_in_c_a ? "yes" : "no"),
        expect("c ∈ C({b})", out.c_in_c_b, out.c_in_c_b ? "yes" : "no"),
        expect("c ∉ C({a∨b})", !out.c_in_c_a_or_b, out.c_in_c_a_or_b ? "c ∈ C({a∨b})" : "c ∉ C({a∨b})"),
        expect("hat(a∨b) = {m,n,p}", out.hat_a_or_b == w.all_models(), "hat(a∨b) = " + w.render(out.hat_a_or_b)),
        expect("n ∈ f(hat(a∨b))", out.n_chosen, "f(hat(a∨b)) = " + w.render(out.f_hat_a_or_b)),
    };
    for (const auto& r : out.rules) {
      const bool want_fail = r.property == property::kOrR2;
      rep.reports.push_back(expect(r.property + (want_fail ? " fails" : " holds"), r.holds() != want_fail,
                                   r.holds() ? "holds" : r.detail));
    }
    Json observed = Json::array();
    for (const auto& r : out.rules) observed.push_back(io::report_to_json(r));
    rep.output = Json{{"model", io::fc_model_to_json(fcm)}, {"observed", std::move(observed)}};
  } else if (o.example == "negation") {
    const auto out = builtins::negation_example();
    const auto& d = out.demo;
    const AtomLanguage& L = d.extended.language();
    rep.reports = {
        expect("C({a,!b}) = L", d.c_a_not_b_is_full, "C({a,!b}) = " + L.render(d.c_a_not_b)),
        expect("b ∉ C({a})", !d.b_in_c_a, "C({a}) = " + L.render(d.c_a)),
        expect("¬-R1 holds", d.neg_r1.holds(), d.neg_r1.holds() ? "holds" : d.neg_r1.detail),
        expect("¬-R2 fails", !d.neg_r2.holds(), d.neg_r2.holds() ? "holds" : d.neg_r2.detail),
        expect("residual ≥ 10^7 × tolerance", out.margin >= 1e7, "margin " + std::to_string(out.margin)),
    };
    rep.output = Json{{"instance", io::quantum_to_json(d.extended)},
                      {"b_residual", d.b_residual},
                      {"meet_norm", d.meet_norm},
                      {"margin", out.margin},
                      {"observed", Json::array({io::report_to_json(d.neg_r1), io::report_to_json(d.neg_r2)})}};
  } else if (o.example == "coherence") {
    const FCModel fcm = builtins::disjunction_model();
    const auto out = builtins::coherence_example(fcm);
    auto verdict = [&](const char* name) { return find_report(out.axioms, name); };
    const auto* coh = verdict(property::kCoherence);
    rep.reports = {
        expect("Contraction holds", verdict(property::kContraction)->holds(), "Contraction"),
        expect("Local Cumulativity holds", verdict(property::kLocalCumulativity)->holds(), "Local Cumulativity"),
        expect("Coherence fails at X={m,n}, Y={m,n,p}", out.as_expected(),
               coh->holds() ? "Coherence holds" : coh->detail),
    };
    Json observed = Json::array();
    for (const auto& r : out.axioms) observed.push_back(io::report_to_json(r));
    rep.output = Json{{"observed", std::move(observed)}};
  } else {
    throw InputError("unknown example \"" + o.example + "\"; expected disjunction, negation or coherence");
  }
  return rep;
}

// random ---------------------------------------------------------------------

/// Pass/fail counts for one invariant across a corpus.
struct Tally {
  Tally(const char* n) : name(n) {}  // NOLINT: implicit, for brace lists

  std::string name;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::optional<std::size_t> first_failure;
  std::string detail;
  std::size_t failures = 0;

  void record(std::size_t instance, const std::vector<PropertyReport>& reports) {
    ++checked;
    for (const auto& r : reports)
      if (!r.holds()) {
        ++failures;
        if (!first_failure) {
          first_failure = instance;
          detail = r.property + ": " + r.detail;
        }
        return;
      }
  }
  void record(std::size_t instance, const PropertyReport& r) { record(instance, std::vector<PropertyReport>{r}); }

  PropertyReport report() const {
    const std::string scope = "corpus: " + std::to_string(checked) + " instances";
    PropertyReport r = first_failure
                           ? fails(name, {static_cast<std::uint32_t>(*first_failure)},
                                   "instance " + std::to_string(*first_failure) + ": " + detail, scope)
                           : holds(name, scope);
    if (skipped) r.notes.push_back(std::to_string(skipped) + " instances skipped (too many theories to represent)");
    if (failures) r.notes.push_back(std::to_string(failures) + " failing instances");
    return r;
  }
};

PropertyReport makinson_agreement(const ConsequenceTable& t) {
  const auto rs = check_c_axioms(t);
  auto ok = [&](const char* name) { return find_report(rs, name)->holds(); };
  const bool a = ok(property::kInclusion) && ok(property::kCumulativity);
  const bool b = ok(property::kInclusion) && ok(property::kIdempotence) && ok(property::kCautiousMonotonicity);
  const bool c = ok(property::kInclusion) && ok(property::kTwoLoop);
  if (a == b && b == c) return holds("Makinson equivalences agree");
  return fails("Makinson equivalences agree", {}, std::string("verdicts ") + (a ? "1" : "0") + (b ? "1" : "0") + (c ? "1" : "0"));
}

PropertyReport loop2_matches(const ConsequenceTable& t) {
  const bool loop2 = check_loop(t, 2).holds();
  const bool two = check_two_loop(t).holds();
  if (loop2 == two) return holds("Loop at length 2 = 2-Loop");
  return fails("Loop at length 2 = 2-Loop", {}, "Loop(2) " + std::string(loop2 ? "holds" : "fails") + ", 2-Loop " +
                                                    (two ? "holds" : "fails"));
}

/// Representation checks; returns nullopt when the table has too many theories.
std::optional<std::vector<PropertyReport>> representation_checks(const ConsequenceTable& t) {
  if (theories(t, true).size() > kExhaustiveModelLimit) return std::nullopt;
  const FCModel fcm = represent(t);
  std::vector<PropertyReport> out;
  out.push_back(induced_consequence(fcm) == t ? holds("Round trip") : fails("Round trip", {}, "induced table differs"));
  for (auto& r : check_choice_axioms(fcm))
    if (r.property == property::kContraction || r.property == property::kLocalCumulativity ||
        r.property == property::kConsistency)
      out.push_back(std::move(r));
  const CnOperator cn_op(t);
  for (std::uint32_t m = 0; m < t.language().subset_count(); ++m)
    if (theory_of(fcm.world, mod_of(fcm.world, AtomSet(m))) != cn_op(AtomSet(m))) {
      out.push_back(fails("bar(hat(A)) = Cn(A)", {m}, "A=" + t.language().render(AtomSet(m))));
      return out;
    }
  out.push_back(holds("bar(hat(A)) = Cn(A)"));
  return out;
}

RunReport cmd_random(const Options& o) {
  const auto mode = corpus::parse_mode(o.mode);
  if (!mode) throw InputError("unknown --mode \"" + o.mode + "\"; expected fc-model, rejection or quantum");
  corpus::CorpusSpec spec{o.seed, o.atoms, o.count, *mode};
  spec.validate();
  if (*mode == corpus::Mode::Rejection && spec.atoms > 4)
    throw InputError("rejection mode supports at most 4 atoms");

  RunReport rep("random");
  rep.seed = spec.seed;
  rep.rng = corpus::kRngName;
  corpus::Rng rng(spec.seed);
  const AtomLanguage lang = corpus::default_language(spec.atoms);

  Json output{{"mode", corpus::to_string(spec.mode)}, {"atoms", spec.atoms}, {"count", spec.count}};

  auto table_battery = [&](std::vector<Tally>& tallies, std::size_t i, const ConsequenceTable& t) {
    tallies[0].record(i, makinson_agreement(t));
    tallies[1].record(i, loop2_matches(t));
    tallies[2].record(i, check_cn_laws(t));
    if (auto r = representation_checks(t))
      tallies[3].record(i, *r);
    else
      ++tallies[3].skipped;
  };
  std::vector<Tally> tallies{{"Makinson equivalences agree"},
                             {"Loop at length 2 = 2-Loop"},
                             {"Cn laws"},
                             {"Representation (round trip, Contraction, Local Cumulativity, Consistency)"}};

  if (spec.mode == corpus::Mode::FcModel) {
    Tally soundness("Soundness (induced table is a C-logic)");
    std::size_t restricted = 0, l_logics = 0;
    for (std::size_t i = 0; i < spec.count; ++i) {
      const FCModel fcm = corpus::random_fc_model(lang, rng);
      restricted += fcm.restricted;
      const ConsequenceTable t = induced_consequence(fcm);
      std::vector<PropertyReport> rs;
      for (auto& r : check_choice_axioms(fcm))
        if (r.property == property::kContraction || r.property == property::kLocalCumulativity) rs.push_back(r);
      rs.push_back(check_inclusion(t));
      rs.push_back(check_cumulativity(t));
      soundness.record(i, rs);
      table_battery(tallies, i, t);
      l_logics += check_loop(t, 4).holds();
    }
    tallies.insert(tallies.begin(), soundness);
    output["restricted"] = restricted;
    output["sound"] = soundness.checked - soundness.failures;
    output["loop_up_to_4"] = l_logics;
  } else if (spec.mode == corpus::Mode::Rejection) {
    const auto result = corpus::rejection_c_logics(lang, spec.count, rng);
    std::size_t l_logics = 0;
    for (std::size_t i = 0; i < result.accepted.size(); ++i) {
      table_battery(tallies, i, result.accepted[i]);
      l_logics += check_loop(result.accepted[i], 4).holds();
    }
    output["accepted"] = result.accepted.size();
    output["attempts"] = result.attempts;
    output["acceptance_rate"] = result.acceptance_rate();
    output["proposal"] = "inclusive";
    output["loop_up_to_4"] = l_logics;
    if (result.accepted.size() < spec.count)
      rep.reports.push_back(fails("Corpus complete", {static_cast<std::uint32_t>(result.accepted.size())},
                                  "attempt limit reached"));
  } else {
    tallies = {{"Inclusion and Cumulativity"}, {"Loop up to 4"}, {"Distance monotonicity"}, {"∧-R (intersection atom)"}};
    for (std::size_t i = 0; i < spec.count; ++i) {
      const auto q = corpus::random_quantum_instance(lang, rng);
      const ConsequenceTable t = quantum::quantum_table(q);
      tallies[0].record(i, {check_inclusion(t), check_cumulativity(t)});
      tallies[1].record(i, check_loop(t, 4));
      tallies[2].record(i, quantum::check_bca(q));
      tallies[3].record(i, quantum::check_conjunction_rule(q));
    }
  }

  Json counts = Json::array();
  for (const auto& t : tallies) {
    counts.push_back(Json{{"invariant", t.name}, {"checked", t.checked}, {"passed", t.checked - t.failures},
                          {"skipped", t.skipped}});
    rep.reports.push_back(t.report());
  }
  output["tallies"] = std::move(counts);
  rep.output = std::move(output);
  return rep;
}

void summarize(const RunReport& rep, std::ostream& err) {
  std::size_t ok = 0;
  for (const auto& r : rep.reports) ok += r.holds();
  err << "nml " << rep.command << ": " << rep.reports.size() << " properties, " << ok << " hold";
  if (ok != rep.reports.size()) err << ", " << rep.reports.size() - ok << " fail";
  err << "\n";
  for (const auto& r : rep.reports)
    if (!r.holds()) err << "  FAIL " << r.property << ": " << r.detail << "\n";
  err << "verdict: " << (rep.passed() ? "pass" : "fail");
  if (rep.wall_time) err << " (" << *rep.wall_time << " s)";
  err << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite nonmonotonic consequence operations: checks, models and counterexamples", "nml"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--report", o.report_file, "Write the JSON report to FILE instead of stdout");
    sub->add_flag("--timing", o.timing, "Include wall time in the JSON report");
  };
  auto* check = app.add_subcommand("check", "Check the C-logic axioms and Loop on a table");
  check->add_option("input", o.input, "Table JSON")->required();
  check->add_option("--max-loop", o.max_loop, "Longest Loop cycle checked");
  common(check);

  auto* represent_cmd = app.add_subcommand("represent", "Build the fC-model of a C-logic and round-trip it");
  represent_cmd->add_option("input", o.input, "Table JSON")->required();
  common(represent_cmd);

  auto* quantum_cmd = app.add_subcommand("quantum", "Induced table and checks for a subspace instance");
  quantum_cmd->add_option("input", o.input, "Instance JSON")->required();
  quantum_cmd->add_option("--max-loop", o.max_loop, "Longest Loop cycle checked");
  quantum_cmd->add_option("--tol", o.tol, "Membership tolerance (overrides the instance)");
  common(quantum_cmd);

  auto* conn = app.add_subcommand("connectives", "Connective rules over the depth-bounded closure");
  conn->add_option("input", o.input, "Model JSON, or table JSON for the conservative-extension check")->required();
  conn->add_option("--depth", o.depth, "Closure depth");
  common(conn);

  auto* examples = app.add_subcommand("examples", "Run a named builtin counterexample");
  examples->add_option("name", o.example, "disjunction, negation or coherence")->required();
  examples->add_option("--depth", o.depth, "Closure depth (disjunction)");
  common(examples);

  auto* random = app.add_subcommand("random", "Generate a seeded corpus and run the invariant battery");
  random->add_option("--seed", o.seed, "64-bit seed");
  random->add_option("--atoms", o.atoms, "Atom count");
  random->add_option("--count", o.count, "Instance count");
  random->add_option("--mode", o.mode, "fc-model, rejection or quantum");
  common(random);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  RunReport rep;
  try {
    if (check->parsed()) rep = cmd_check(o);
    else if (represent_cmd->parsed()) rep = cmd_represent(o);
    else if (quantum_cmd->parsed()) rep = cmd_quantum(o);
    else if (conn->parsed()) rep = cmd_connectives(o);
    else if (examples->parsed()) rep = cmd_examples(o);
    else rep = cmd_random(o);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunReport shown = rep;
  shown.wall_time = seconds;
  if (o.timing) rep.wall_time = seconds;
  const std::string json = rep.to_json().dump(2) + "\n";
  if (o.report_file.empty()) {
    out << json;
  } else {
    std::ofstream f(o.report_file, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << o.report_file << "\n";
      return kExitInput;
    }
    f << json;
  }
  summarize(shown, err);
  return rep.passed() ? kExitPass : kExitFail;
}

}  // namespace nml::cli
