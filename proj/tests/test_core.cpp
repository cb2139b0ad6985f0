#include <random>

#include "doctest.h"
#include "nml/builtins.hpp"
#include "nml/core.hpp"
#include "nml/corpus.hpp"
#include "nml/error.hpp"
#include "nml/semantics.hpp"
#include "oracle.hpp"

using namespace nml;

namespace {

AtomLanguage ab() { return AtomLanguage({"a", "b"}); }

ConsequenceTable table_of(const AtomLanguage& lang, const std::vector<std::uint32_t>& rows) {
  std::vector<AtomSet> r;
  for (auto x : rows) r.emplace_back(x);
  return ConsequenceTable(lang, r);
}

bool all_hold(const std::vector<PropertyReport>& rs) {
  for (const auto& r : rs)
    if (!r.holds()) return false;
  return true;
}

// disjunction example computed straight from its satisfaction matrix: sat m = {a,c},
// n = {a,d}, p = {b,c}; f is the identity except f({m,n}) = {m}.
std::vector<std::uint32_t> example1_rows() {
  const std::uint32_t sat[3] = {0b0101, 0b1001, 0b0110};
  std::vector<std::uint32_t> rows(16);
  for (std::uint32_t a = 0; a < 16; ++a) {
    std::uint32_t hat = 0;
    for (int m = 0; m < 3; ++m)
      if ((a & ~sat[m]) == 0) hat |= 1u << m;
    const std::uint32_t f = hat == 0b011 ? 0b001 : hat;
    std::uint32_t bar = 0b1111;
    for (int m = 0; m < 3; ++m)
      if ((f >> m) & 1u) bar &= sat[m];
    rows[a] = bar;
  }
  return rows;
}

}  // namespace

TEST_CASE("language and table construction") {
  CHECK_THROWS_AS(AtomLanguage(std::vector<std::string>{}), InputError);
  CHECK_THROWS_AS(AtomLanguage({"a", "a"}), InputError);
  std::vector<std::string> many;
  for (int i = 0; i < 17; ++i) many.push_back("x" + std::to_string(i));
  CHECK_THROWS_AS(AtomLanguage{many}, InputError);

  const auto lang = ab();
  CHECK(lang.key(AtomSet(0b11)) == "a,b");
  CHECK(lang.key(AtomSet(0)) == "");
  CHECK(lang.render(AtomSet(0b10)) == "{b}");
  CHECK_THROWS_AS(ConsequenceTable(lang, {AtomSet(0)}), InputError);
  CHECK_THROWS_AS(table_of(lang, {0, 1, 2, 4}), InputError);
}

TEST_CASE("identity and constant tables satisfy every C axiom") {
  CHECK(all_hold(check_c_axioms(ConsequenceTable::identity(ab()))));
  CHECK(all_hold(check_c_axioms(ConsequenceTable::constant(ab(), AtomSet(0b11)))));
  CHECK(check_loop(ConsequenceTable::identity(ab()), 4).holds());
}

TEST_CASE("disjunction example induced table is a C-logic") {
  const auto t = induced_consequence(builtins::disjunction_model());
  CHECK(oracle::rows_of(t) == example1_rows());
  CHECK(check_inclusion(t).holds());
  CHECK(check_cumulativity(t).holds());
  // no model satisfies both a and b
  CHECK_FALSE(is_consistent(t, AtomSet(0b0011)));
}

TEST_CASE("hand-broken row produces a replayable Cumulativity witness") {
  // C(∅) = {a,b}, all other rows identity
  const auto t = table_of(ab(), {0b11, 0b01, 0b10, 0b11});
  const auto r = check_cumulativity(t);
  REQUIRE_FALSE(r.holds());
  REQUIRE(r.witness.size() == 2);
  CHECK(r.witness[0] == 0);
  CHECK(witness_violates(t, r));
  // (∅, {a}) is a violation too
  PropertyReport alt = fails(property::kCumulativity, {0, 0b01}, "");
  CHECK(witness_violates(t, alt));
  CHECK_FALSE(oracle::cumulativity(oracle::rows_of(t)));
}

TEST_CASE("check_loop rejects max_n below 2") {
  CHECK_THROWS_AS(check_loop(ConsequenceTable::identity(ab()), 1), ContractError);
}

TEST_CASE("consistency, theories, Cn on the small named tables") {
  const auto id = ConsequenceTable::identity(ab());
  const auto full = ConsequenceTable::constant(ab(), AtomSet(0b11));
  CHECK(is_consistent(id, AtomSet(0b01)));
  CHECK_FALSE(is_consistent(full, AtomSet(0)));
  CHECK(theories(id).size() == 4);
  CHECK(theories(full) == std::vector<AtomSet>{AtomSet(0b11)});
  for (std::uint32_t a = 0; a < 4; ++a) {
    CHECK(cn(id, AtomSet(a)) == AtomSet(a));
    CHECK(cn(full, AtomSet(a)) == AtomSet(0b11));
  }
  // C(L) = L, so L is inconsistent; the singletons are maximal
  CHECK(maximal_consistent_sets(id) == std::vector<AtomSet>{AtomSet(0b01), AtomSet(0b10)});
  CHECK(maximal_consistent_sets(full).empty());
}

TEST_CASE("disjunction example theories, Cn and maximal consistent sets match brute force") {
  const auto t = induced_consequence(builtins::disjunction_model());
  const auto rows = example1_rows();
  // frozen: theories ∅, {c}, {a,c}, {b,c}, {a,d} and L
  const std::vector<AtomSet> expected{AtomSet(0), AtomSet(0b0100), AtomSet(0b0101), AtomSet(0b0110),
                                      AtomSet(0b1001)};
  CHECK(theories(t, true) == expected);
  std::vector<AtomSet> from_oracle;
  for (auto x : oracle::theories(rows))
    if (x != 0b1111) from_oracle.emplace_back(x);
  CHECK(from_oracle == expected);

  CHECK(cn(t, AtomSet(0b0001)) == AtomSet(oracle::cn(rows, 0b0001)));
  CHECK(cn(t, AtomSet(0b0001)).subset_of(t(AtomSet(0b0001))));
  CHECK(t(AtomSet(0b0001)) == AtomSet(0b0101));

  // bar({m}), bar({n}), bar({p})
  CHECK(maximal_consistent_sets(t) == std::vector<AtomSet>{AtomSet(0b0101), AtomSet(0b0110), AtomSet(0b1001)});
}

TEST_CASE("theory order on the identity table is inclusion") {
  const auto id = ConsequenceTable::identity(ab());
  const auto po = theory_order(id);
  REQUIRE(po.theories.size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(po.leq.get(i, j) == po.theories[i].subset_of(po.theories[j]));
  CHECK(po.leq_reflexive());
  CHECK(po.lt_plus_irreflexive());
  CHECK_FALSE(po.nontrivial_leq_cycle(4).has_value());
}

TEST_CASE("BoolMatrix closure and composition") {
  BoolMatrix m(3);
  m.set(0, 1);
  m.set(1, 2);
  const auto tc = m.transitive_closure();
  CHECK(tc.get(0, 2));
  CHECK_FALSE(tc.get(2, 0));
  CHECK(m.compose(m).get(0, 2));
  CHECK(BoolMatrix::identity(3).compose(m) == m);
}

TEST_CASE("property: checker verdicts agree with the naive oracle on random tables") {
  corpus::Rng rng(7);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto lang = corpus::default_language(n);
    for (int i = 0; i < 1500; ++i) {
      const auto t = (i % 2) ? corpus::uniform_table(lang, rng) : corpus::inclusive_table(lang, rng);
      const auto rows = oracle::rows_of(t);
      const auto rs = check_c_axioms(t);
      CHECK(find_report(rs, property::kInclusion)->holds() == oracle::inclusion(rows));
      CHECK(find_report(rs, property::kCumulativity)->holds() == oracle::cumulativity(rows));
      CHECK(find_report(rs, property::kIdempotence)->holds() == oracle::idempotence(rows));
      CHECK(find_report(rs, property::kCautiousMonotonicity)->holds() == oracle::cautious_monotonicity(rows));
      CHECK(find_report(rs, property::kTwoLoop)->holds() == oracle::two_loop(rows));
      for (const auto& r : rs)
        if (!r.holds()) CHECK(witness_violates(t, r));
      CHECK(theories(t) == [&] {
        std::vector<AtomSet> v;
        for (auto x : oracle::theories(rows)) v.emplace_back(x);
        return v;
      }());
      CnOperator c(t);
      for (std::uint32_t a = 0; a < rows.size(); ++a) CHECK(c(AtomSet(a)).bits == oracle::cn(rows, a));
    }
  }
}

TEST_CASE("property: check_loop agrees with direct cycle enumeration") {
  corpus::Rng rng(11);
  const auto lang = corpus::default_language(3);
  int violators = 0;
  for (int i = 0; i < 4000; ++i) {
    const auto t = corpus::inclusive_table(lang, rng);
    const auto rows = oracle::rows_of(t);
    const auto r3 = check_loop(t, 3);
    CHECK(r3.holds() == oracle::loop(rows, 3));
    // Loop at length 2 is 2-Loop
    CHECK(check_loop(t, 2).holds() == check_two_loop(t).holds());
    if (!r3.holds()) {
      CHECK(witness_violates(t, r3));
      if (is_c_logic(t)) ++violators;
    }
  }
  CHECK(violators > 0);
}

TEST_CASE("property: Makinson axiomatizations agree") {
  corpus::Rng rng(3);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto lang = corpus::default_language(n);
    for (int i = 0; i < 3000; ++i) {
      const auto t = corpus::inclusive_table(lang, rng);
      const auto rs = check_c_axioms(t);
      auto h = [&](const char* p) { return find_report(rs, p)->holds(); };
      const bool c1 = h(property::kInclusion) && h(property::kCumulativity);
      const bool c2 = h(property::kInclusion) && h(property::kIdempotence) && h(property::kCautiousMonotonicity);
      const bool c3 = h(property::kInclusion) && h(property::kTwoLoop);
      CHECK(c1 == c2);
      CHECK(c1 == c3);
    }
  }
}

TEST_CASE("property: Cn laws and theory order on corpus C-logics") {
  corpus::Rng rng(5);
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto lang = corpus::default_language(n);
    for (int i = 0; i < 150; ++i) {
      const auto fcm = corpus::random_fc_model(lang, rng, 6);
      const auto t = induced_consequence(fcm);
      REQUIRE(is_c_logic(t));
      CHECK(all_hold(check_cn_laws(t)));
      const auto rows = oracle::rows_of(t);
      CHECK(theories(t).back() == t.full());
      CHECK(maximal_consistent_sets(t) == [&] {
        std::vector<AtomSet> v;
        for (auto x : oracle::maximal_consistent(rows)) v.emplace_back(x);
        return v;
      }());
      for (auto m : maximal_consistent_sets(t)) CHECK(t(m) == m);

      const auto po = theory_order(t);
      CHECK(po.leq_reflexive());
      for (std::size_t a = 0; a < po.theories.size(); ++a)
        for (std::size_t b = 0; b < po.theories.size(); ++b) {
          CHECK(po.leq.get(a, b) == oracle::leq(rows, po.theories[a].bits, po.theories[b].bits));
          CHECK(po.lt.get(a, b) == (po.leq.get(a, b) && a != b));
        }
      CHECK(po.lt_plus == po.lt.transitive_closure());
      CHECK(po.lt_plus_irreflexive() == !oracle::lt_plus_reflexive_somewhere(rows));
      if (check_loop(t, 4).holds()) {
        CHECK(po.lt_plus_irreflexive());
        CHECK_FALSE(po.nontrivial_leq_cycle(4).has_value());
      }
    }
  }
}

TEST_CASE("Cn laws can fail off C-logics and their witnesses replay") {
  corpus::Rng rng(9);
  const auto lang = corpus::default_language(3);
  int failures = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto t = corpus::uniform_table(lang, rng);
    for (const auto& r : check_cn_laws(t))
      if (!r.holds()) {
        ++failures;
        CHECK(witness_violates(t, r));
      }
  }
  CHECK(failures > 0);
}

TEST_CASE("Loop report carries both conclusion forms and the 2-Loop remark") {
  const auto r = check_loop(ConsequenceTable::identity(ab()), 3);
  CHECK(r.notes.size() >= 2);
  CHECK(weak_compactness_report().holds());
}
