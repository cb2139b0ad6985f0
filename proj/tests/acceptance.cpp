// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nml/builtins.hpp"
#include "nml/connectives.hpp"
#include "nml/core.hpp"
#include "nml/corpus.hpp"
#include "nml/klm.hpp"
#include "nml/quantum.hpp"
#include "nml/semantics.hpp"
#include "oracle.hpp"

using namespace nml;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

bool all_hold(const std::vector<PropertyReport>& rs) {
  for (const auto& r : rs)
    if (!r.holds()) return false;
  return true;
}

std::string first_failure(const std::vector<PropertyReport>& rs) {
  for (const auto& r : rs)
    if (!r.holds()) return r.property + ": " + r.detail;
  return "";
}

bool holds(const std::vector<PropertyReport>& rs, const char* name) {
  const auto* r = find_report(rs, name);
  return r && r->holds();
}

/// C-logics at n ≤ 4 from both generators, with their origin.
struct CorpusEntry {
  ConsequenceTable table;
  const char* mode;
};

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> out;
  corpus::Rng rng(kSeed);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto lang = corpus::default_language(n);
    for (int i = 0; i < 200; ++i) out.push_back({induced_consequence(corpus::random_fc_model(lang, rng, 7)), "fc-model"});
  }
  const std::pair<std::size_t, std::size_t> rejection_plan[] = {{1, 40}, {2, 120}, {3, 150}, {4, 25}};
  for (auto [n, count] : rejection_plan) {
    auto res = corpus::rejection_c_logics(corpus::default_language(n), count, rng);
    for (auto& t : res.accepted) out.push_back({std::move(t), "rejection"});
  }
  // uniform proposals are only practical at n = 2
  auto uniform = corpus::rejection_c_logics(corpus::default_language(2), 40, rng, corpus::Proposal::Uniform);
  for (auto& t : uniform.accepted) out.push_back({std::move(t), "rejection"});
  return out;
}

const std::vector<CorpusEntry>& shared_corpus() {
  static const std::vector<CorpusEntry> c = build_corpus();
  return c;
}

// 1 -------------------------------------------------------------------------
Outcome disjunction() {
  Outcome o;
  const auto fcm = builtins::disjunction_model();
  const auto d = builtins::disjunction_example(fcm);
  o.require(d.c_in_c_a, "c ∉ C({a})");
  o.require(d.c_in_c_b, "c ∉ C({b})");
  o.require(!d.c_in_c_a_or_b, "c ∈ C({a∨b})");
  o.require(d.hat_a_or_b == ModelMask(0b111), "hat(a∨b) ≠ {m,n,p}");
  o.require(d.n_chosen, "n ∉ f(hat(a∨b))");
  o.require(d.as_expected(fcm.world), "rule verdicts differ from ∧-R, ¬-R1, ¬-R2, ∨-R1 hold and ∨-R2 fails");
  if (o.ok) o.detail = "c∈C(a), c∈C(b), c∉C(a∨b), hat(a∨b)={m,n,p}, n∈f(hat(a∨b))";
  return o;
}

// 2 -------------------------------------------------------------------------
Outcome negation() {
  Outcome o;
  const auto n = builtins::negation_example();
  o.require(n.demo.c_a_not_b_is_full, "C({a,¬b}) ≠ L");
  o.require(!n.demo.b_in_c_a, "b ∈ C({a})");
  o.require(n.demo.neg_r1.holds(), "¬-R1 fails");
  o.require(n.margin >= 1e7, "residual margin below 1e7");
  o.require(n.as_expected(), "negation outcome not as expected");
  if (o.ok) {
    std::ostringstream s;
    s << "C({a,¬b})=L, b∉C({a}), ¬-R1 holds, margin " << n.margin;
    o.detail = s.str();
  }
  return o;
}

// 3 -------------------------------------------------------------------------
Outcome round_trip() {
  Outcome o;
  const auto& c = shared_corpus();
  std::size_t fc = 0, rej = 0, subsets = 0;
  for (const auto& e : c) {
    (std::string(e.mode) == "fc-model" ? fc : rej)++;
    o.require(is_c_logic(e.table), "corpus entry is not a C-logic");
    const auto r = represent(e.table);
    o.require(induced_consequence(r) == e.table, "round trip differs");
    o.require(r.world.model_count() <= kExhaustiveModelLimit, "world too large for the exhaustive check");
    const auto ax = check_choice_axioms(r);
    o.require(holds(ax, property::kContraction), "Contraction fails on a representation");
    o.require(holds(ax, property::kLocalCumulativity), "Local Cumulativity fails on a representation");
    o.require(holds(ax, property::kConsistency), "Consistency fails on a representation");
    for (const auto& rep : ax) o.require(rep.scope == "exhaustive", "choice axioms were sampled");
    subsets += r.world.model_subset_count();
    if (!o.ok) break;
  }
  o.require(c.size() >= 1000, "corpus smaller than 1000");
  o.require(fc > 0 && rej > 0, "one generator mode is missing");
  if (o.ok)
    o.detail = std::to_string(c.size()) + " C-logics (" + std::to_string(fc) + " fc-model, " + std::to_string(rej) +
               " rejection), " + std::to_string(subsets) + " model subsets checked";
  return o;
}

// 4 -------------------------------------------------------------------------
Outcome makinson() {
  Outcome o;
  std::size_t sampled = 0, exhaustive = 0, c_logics = 0;
  auto agree = [&](const ConsequenceTable& t) {
    const auto rs = check_c_axioms(t);
    const bool a = holds(rs, property::kInclusion) && holds(rs, property::kCumulativity);
    const bool b = holds(rs, property::kInclusion) && holds(rs, property::kIdempotence) &&
                   holds(rs, property::kCautiousMonotonicity);
    const bool c = holds(rs, property::kInclusion) && holds(rs, property::kTwoLoop);
    const auto rows = oracle::rows_of(t);
    const bool ref = oracle::inclusion(rows) && oracle::cumulativity(rows);
    o.require(a == b && b == c, "axiomatizations disagree on " + t.language().render(t.full()));
    o.require(a == ref, "verdict differs from the naive oracle");
    if (a) ++c_logics;
  };

  corpus::Rng rng(kSeed + 4);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto lang = corpus::default_language(n);
    const int count = n == 3 ? 10000 : 2000;
    for (int i = 0; i < count; ++i, ++sampled) agree(corpus::uniform_table(lang, rng));
  }
  // every table at n = 2: 4 rows, 4 values each
  const auto lang2 = corpus::default_language(2);
  for (std::uint32_t code = 0; code < 256; ++code, ++exhaustive) {
    std::vector<AtomSet> rows;
    for (int r = 0; r < 4; ++r) rows.emplace_back((code >> (2 * r)) & 3u);
    agree(ConsequenceTable(lang2, rows));
  }
  o.require(sampled >= 10000, "fewer than 10^4 sampled tables");
  if (o.ok)
    o.detail = std::to_string(sampled) + " uniform tables at n≤3 + all " + std::to_string(exhaustive) +
               " tables at n=2 agree (" + std::to_string(c_logics) + " C-logics)";
  return o;
}

// 5 -------------------------------------------------------------------------
Outcome quantum_l_logics() {
  Outcome o;
  corpus::Rng rng(kSeed + 5);
  std::size_t count = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (int i = 0; i < 40; ++i, ++count) {
      const auto q = corpus::random_quantum_instance(corpus::default_language(n), rng);
      o.require(q.dim() <= 4, "dimension above 4");
      const auto t = quantum_table(q);
      o.require(check_inclusion(t).holds(), "Inclusion fails on a quantum table");
      o.require(check_cumulativity(t).holds(), "Cumulativity fails on a quantum table");
      o.require(check_loop(t, 4).holds(), "Loop fails on a quantum table");
      o.require(oracle::loop(oracle::rows_of(t), 4), "oracle Loop fails");
      const auto bca = check_bca(q);
      o.require(bca.holds(), "BCA: " + bca.detail);
    }
  o.require(count >= 100, "fewer than 100 instances");
  if (o.ok) o.detail = std::to_string(count) + " instances (d≤4, n≤4): Inclusion, Cumulativity, Loop≤4, BCA hold";
  return o;
}

// 6 -------------------------------------------------------------------------
Outcome connective_rules() {
  Outcome o;
  std::size_t tables = 0;
  for (const auto& e : shared_corpus()) {
    const auto& t = e.table;
    if (t.atom_count() > 3) continue;
    ++tables;
    const ClosedLanguage cl(t.language(), 2);
    const auto fcm = represent(t);
    const auto rs = check_connective_rules(fcm, cl);
    for (const char* p : {property::kAndR, property::kNotR1, property::kNotR2, property::kOrR1})
      o.require(holds(rs, p), std::string(p) + " fails: " + first_failure(rs));
    const auto ce = conservative_extension_check(t, 2);
    o.require(ce.holds(), "conservative extension: " + ce.detail);
    if (!o.ok) break;
  }
  if (o.ok) o.detail = std::to_string(tables) + " C-logics at n≤3, depth 2: ∧-R, ¬-R1, ¬-R2, ∨-R1, P∩C'(A)=C(A)";
  return o;
}

// 7 -------------------------------------------------------------------------
Outcome cn_suite() {
  Outcome o;
  std::size_t tables = 0, sets = 0;
  for (const auto& e : shared_corpus()) {
    const auto& t = e.table;
    ++tables;
    const auto rs = check_cn_laws(t);
    o.require(all_hold(rs), first_failure(rs));
    const auto rows = oracle::rows_of(t);
    const CnOperator c(t);
    for (std::uint32_t a = 0; a < rows.size(); ++a, ++sets) {
      const std::uint32_t ref = oracle::cn(rows, a);
      o.require(c(AtomSet(a)).bits == ref, "Cn differs from the theory-list oracle");
      o.require(oracle::sub(a, ref) && oracle::sub(ref, rows[a]), "oracle: A ⊆ Cn(A) ⊆ C(A) fails");
      o.require((rows[a] == rows.size() - 1) == (ref == rows.size() - 1), "oracle: inconsistency ⇔ Cn = L fails");
    }
    if (!o.ok) break;
  }
  if (o.ok) o.detail = std::to_string(tables) + " C-logics, " + std::to_string(sets) + " sets: 0 violations";
  return o;
}

// 8 -------------------------------------------------------------------------
Outcome l_logic_order() {
  Outcome o;
  std::size_t loop_passing = 0;
  auto check_order = [&](const ConsequenceTable& t) {
    if (!check_loop(t, 4).holds()) return;
    ++loop_passing;
    const auto po = theory_order(t);
    o.require(po.lt_plus_irreflexive(), "<⁺ reflexive on a Loop-passing table");
    o.require(!oracle::lt_plus_reflexive_somewhere(oracle::rows_of(t)), "oracle <⁺ reflexive");
  };
  for (const auto& e : shared_corpus()) check_order(e.table);
  corpus::Rng qrng(kSeed + 8);
  for (int i = 0; i < 50; ++i)
    check_order(quantum_table(corpus::random_quantum_instance(corpus::default_language(3), qrng)));

  // seeded search for a C-logic that is not an L-logic
  corpus::Rng rng(kSeed + 80);
  const auto lang = corpus::default_language(3);
  std::optional<ConsequenceTable> found;
  PropertyReport witness;
  std::size_t draws = 0;
  while (!found && draws < 1'000'000) {
    ++draws;
    auto t = corpus::inclusive_table(lang, rng);
    if (!is_c_logic(t)) continue;
    auto r = check_loop(t, 3);
    if (!r.holds()) {
      witness = r;
      found = std::move(t);
    }
  }
  o.require(found.has_value(), "no Loop violator among C-logics at n=3");
  if (found) {
    o.require(witness.witness.size() == 3, "Loop witness is not a 3-cycle");
    o.require(witness_violates(*found, witness), "Loop witness does not replay");
    o.require(!oracle::loop(oracle::rows_of(*found), 3), "oracle does not see the Loop failure");
    const auto cyc = theory_order(*found).nontrivial_leq_cycle(3);
    o.require(cyc.has_value(), "no nontrivial ≤-cycle on the violator");
  }
  if (o.ok)
    o.detail = "<⁺ irreflexive on " + std::to_string(loop_passing) + " Loop-passing tables; violator after " +
               std::to_string(draws) + " draws: " + witness.detail;
  return o;
}

// 9 -------------------------------------------------------------------------
Outcome klm_bridge() {
  Outcome o;
  const klm::PropLanguage lang(2);
  std::size_t conforming = 0, enumerated = 0;
  auto visit = [&](const std::vector<ModelMask>& f) {
    ++enumerated;
    const auto op = klm::from_choice(lang, f);
    if (!klm::conforms(op) || !o.ok) return;
    ++conforming;
    const auto rel = klm::induced_relation(op);
    const auto rs = klm::klm_relation_checks(rel);
    o.require(all_hold(rs), first_failure(rs));
    const auto rebuilt = klm::klm_to_consequence(rel);
    o.require(klm::singleton_agreement(rel, rebuilt).holds(), "reconstruction disagrees on a singleton");
  };
  corpus::enumerate_choice_functions(4, true, visit);
  corpus::enumerate_choice_functions(4, false, visit);
  if (o.ok)
    o.detail = std::to_string(conforming) + " conforming operations of " + std::to_string(enumerated) +
               " enumerated at k=2: LLE, RW, Reflexivity, Cut, CM hold; singletons agree";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::optional<double> limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "disjunction example failure", 1.0, disjunction},
      {2, "orthocomplement negation failure", 1.0, negation},
      {3, "representation round trip", 60.0, round_trip},
      {4, "Makinson equivalences", 120.0, makinson},
      {5, "quantum tables are L-logics", 30.0, quantum_l_logics},
      {6, "connective rules and conservative extension", 60.0, connective_rules},
      {7, "Cn suite", std::nullopt, cn_suite},
      {8, "L-logic order", std::nullopt, l_logic_order},
      {9, "KLM bridge", 30.0, klm_bridge},
  };
  // the corpus is shared by 3, 6, 7 and 8; build it outside their clocks
  const auto t0 = std::chrono::steady_clock::now();
  shared_corpus();
  const double corpus_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.id == 3) secs += corpus_s;
    const bool in_time = !c.limit_s || secs < *c.limit_s;
    const bool pass = o.ok && in_time;
    if (!pass) ++failed;
    std::string limit = c.limit_s ? " < " + std::to_string(static_cast<int>(*c.limit_s)) + " s" : "";
    std::printf("%s criterion %d (%s): %s [%.3f s%s]%s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, limit.c_str(), in_time ? "" : " time limit exceeded");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
