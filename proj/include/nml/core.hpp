#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nml/bits.hpp"
#include "nml/report.hpp"

namespace nml {

/// Finite, ordered set of atom names. Atom i is bit i of an AtomSet.
class AtomLanguage {
 public:
  static constexpr std::size_t kMaxAtoms = 16;

  /// Throws InputError if empty, too large, or names repeat.
  explicit AtomLanguage(std::vector<std::string> atoms);

  std::size_t size() const { return atoms_.size(); }
  std::size_t subset_count() const { return std::size_t{1} << atoms_.size(); }
  AtomSet full() const { return AtomSet::full(static_cast<unsigned>(atoms_.size())); }

  const std::string& name(std::size_t i) const { return atoms_[i]; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Names of the members in language order.
  std::vector<std::string> names(AtomSet s) const;
  /// "{a,b}" style rendering.
  std::string render(AtomSet s) const;
  /// Comma-joined names, "" for the empty set (the table JSON key).
  std::string key(AtomSet s) const;

  bool operator==(const AtomLanguage&) const = default;

 private:
  std::vector<std::string> atoms_;
};

/// The whole operation C : 2^L -> 2^L as a row per subset. Nothing beyond
/// totality is enforced; axioms are what the checkers below decide.
class ConsequenceTable {
 public:
  /// rows[A.bits] = C(A). Throws InputError on size mismatch or stray bits.
  ConsequenceTable(AtomLanguage language, std::vector<AtomSet> rows);

  static ConsequenceTable from_function(AtomLanguage language,
                                        const std::function<AtomSet(AtomSet)>& fn);
  static ConsequenceTable identity(AtomLanguage language);
  static ConsequenceTable constant(AtomLanguage language, AtomSet value);

  const AtomLanguage& language() const { return language_; }
  std::size_t atom_count() const { return language_.size(); }
  AtomSet full() const { return language_.full(); }
  AtomSet operator()(AtomSet a) const { return rows_[a.bits]; }
  std::span<const AtomSet> rows() const { return rows_; }

  bool operator==(const ConsequenceTable&) const = default;

 private:
  AtomLanguage language_;
  std::vector<AtomSet> rows_;
};

// ---------------------------------------------------------------------------
// Axiom checkers. Each returns the first violation in a fixed enumeration
// order, so witnesses are deterministic.
//
// Witness layouts (raw AtomSet bits):
//   Inclusion, Idempotence          [A]
//   Cumulativity, Cautious Mono.    [A, B]   with A ⊆ B ⊆ C(A)
//   2-Loop                          [A, B]   with A ⊆ C(B), B ⊆ C(A)
//   Loop                            [A_0, ..., A_{k-1}]
// ---------------------------------------------------------------------------

namespace property {
inline constexpr const char* kInclusion = "Inclusion";
inline constexpr const char* kCumulativity = "Cumulativity";
inline constexpr const char* kIdempotence = "Idempotence";
inline constexpr const char* kCautiousMonotonicity = "Cautious Monotonicity";
inline constexpr const char* kTwoLoop = "2-Loop";
inline constexpr const char* kLoop = "Loop";
inline constexpr const char* kWeakCompactness = "Weak Compactness";
}  // namespace property

PropertyReport check_inclusion(const ConsequenceTable& table);
PropertyReport check_cumulativity(const ConsequenceTable& table);
PropertyReport check_idempotence(const ConsequenceTable& table);
PropertyReport check_cautious_monotonicity(const ConsequenceTable& table);
PropertyReport check_two_loop(const ConsequenceTable& table);

/// Inclusion, Cumulativity, Idempotence, Cautious Monotonicity, 2-Loop.
std::vector<PropertyReport> check_c_axioms(const ConsequenceTable& table);

/// Inclusion and Cumulativity both hold.
bool is_c_logic(const ConsequenceTable& table);

/// Weak Compactness is vacuous over a finite language; this report always
/// holds and says why.
PropertyReport weak_compactness_report();

/// Loop for every cycle length 2..max_n. Throws ContractError if max_n < 2.
///
/// Works on the graph whose vertices are the distinct values of C, with an
/// edge u -> w when some A has C(A) = u and A ⊆ w; a Loop cycle is a closed
/// walk of exactly k edges in that graph. The report carries both
/// conclusion forms in `notes`: the consecutive form C(A_0) = C(A_1) and the
/// all-pairs form C(A_i) = C(A_j).
PropertyReport check_loop(const ConsequenceTable& table, int max_n = 4);

/// Re-evaluates the property named in `report` on its witness. True iff the
/// witness really violates that property. Used to validate reports.
bool witness_violates(const ConsequenceTable& table, const PropertyReport& report);

// ---------------------------------------------------------------------------
// Consistency, theories, Cn.
// ---------------------------------------------------------------------------

/// C(A) != L.
bool is_consistent(const ConsequenceTable& table, AtomSet a);

/// Fixpoints C(T) = T in increasing mask order; with consistent_only,
/// L is dropped.
std::vector<AtomSet> theories(const ConsequenceTable& table, bool consistent_only = false);

/// Cn(A) for every A at once: the intersection of all theories containing A
/// (L when there is none).
class CnOperator {
 public:
  explicit CnOperator(const ConsequenceTable& table);
  AtomSet operator()(AtomSet a) const { return values_[a.bits]; }

 private:
  std::vector<AtomSet> values_;
};

AtomSet cn(const ConsequenceTable& table, AtomSet a);

namespace property {
inline constexpr const char* kCnBounds = "A ⊆ Cn(A) ⊆ C(A)";
inline constexpr const char* kCnAbsorption = "C(A) = Cn(C(A)) = C(Cn(A))";
inline constexpr const char* kCnMonotone = "Cn monotone";
inline constexpr const char* kCnIdempotent = "Cn idempotent";
inline constexpr const char* kCnInconsistency = "A inconsistent ⇔ Cn(A) = L";
}  // namespace property

/// The Cn laws that hold on C-logics, each over every A (and every A ⊆ B
/// for monotonicity). Witness [A] or [A, B]. On tables that are not
/// C-logics any of them may fail.
std::vector<PropertyReport> check_cn_laws(const ConsequenceTable& table);

/// Consistent sets all of whose strict supersets are inconsistent.
std::vector<AtomSet> maximal_consistent_sets(const ConsequenceTable& table);

/// Square boolean relation stored as packed rows.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  explicit BoolMatrix(std::size_t n);

  std::size_t size() const { return n_; }
  bool get(std::size_t i, std::size_t j) const {
    return (words_[i * stride_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool v = true);

  /// Relational composition: (this ; other)(i, k) = ∃j this(i,j) ∧ other(j,k).
  BoolMatrix compose(const BoolMatrix& other) const;
  static BoolMatrix identity(std::size_t n);
  BoolMatrix transitive_closure() const;

  bool operator==(const BoolMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> words_;
};

/// The ≤ / < / <⁺ relations over the theories of a table.
struct TheoryPoset {
  std::vector<AtomSet> theories;
  BoolMatrix leq;      // T ≤ S iff ∃A ⊆ S with C(A) = T
  BoolMatrix lt;       // T ≤ S and T != S
  BoolMatrix lt_plus;  // transitive closure of lt

  bool leq_reflexive() const;
  bool lt_plus_irreflexive() const;

  /// Indices (into `theories`) of a ≤-cycle T_0 ≤ T_1 ≤ ... ≤ T_{k-1} ≤ T_0
  /// with 2 ≤ k ≤ max_len and not all T_i equal, if one exists.
  std::optional<std::vector<std::size_t>> nontrivial_leq_cycle(std::size_t max_len) const;
};

TheoryPoset theory_order(const ConsequenceTable& table);

}  // namespace nml
