#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nml/bits.hpp"
#include "nml/core.hpp"

namespace nml {

class ModelWorld;

/// Formula over atom indices built from ∧ and ¬. Disjunction is not a node
/// kind: disj(a, b) builds ¬(¬a ∧ ¬b). Immutable; copies share structure.
class Formula {
 public:
  enum class Kind { Atom, And, Not };

  static Formula atom(std::size_t index);
  static Formula conj(Formula left, Formula right);
  static Formula neg(Formula child);
  static Formula disj(Formula left, Formula right);

  Kind kind() const { return node_->kind; }
  std::size_t atom_index() const { return node_->atom; }
  const Formula& left() const { return node_->children[0]; }
  const Formula& right() const { return node_->children[1]; }
  const Formula& child() const { return node_->children[0]; }
  /// Connective nesting; atoms have depth 0.
  int depth() const { return node_->depth; }
  /// Largest atom index mentioned.
  std::size_t max_atom() const { return node_->max_atom; }

  /// Structural identity.
  bool operator==(const Formula& other) const;

  /// Text syntax: `&`, `!`, parentheses; e.g. "!(!a & !b)".
  std::string to_string(const AtomLanguage& language) const;
  /// Index-based key, unique per structure.
  std::string key() const;

 private:
  struct Node {
    Kind kind;
    std::size_t atom = 0;
    int depth = 0;
    std::size_t max_atom = 0;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses the text syntax; `|` is accepted and expands to !(!x & !y).
/// Precedence: ! binds tightest, then &, then |; both binary operators
/// associate to the left. Throws InputError on syntax errors or unknown atoms.
Formula parse_formula(std::string_view text, const AtomLanguage& language);

/// m ⊨ phi with the classical clauses for ∧ and ¬ over the world's atoms.
bool eval_formula(const ModelWorld& world, const Formula& phi, std::size_t model);

/// {m : m ⊨ phi}.
ModelMask extension(const ModelWorld& world, const Formula& phi);

/// Every formula over the base atoms of depth ≤ d, each exactly once.
/// Ordered by depth, then negations before conjunctions, then by operand
/// positions; the atoms come first in language order.
class ClosedLanguage {
 public:
  ClosedLanguage(AtomLanguage base, int depth);

  const AtomLanguage& base() const { return base_; }
  int depth() const { return depth_; }
  std::size_t size() const { return formulas_.size(); }
  const Formula& operator[](std::size_t i) const { return formulas_[i]; }
  const std::vector<Formula>& formulas() const { return formulas_; }

  std::optional<std::size_t> index_of(const Formula& phi) const;
  /// Index of ¬f_i / f_i ∧ f_j when that formula is inside the bound.
  std::optional<std::size_t> neg_index(std::size_t i) const;
  std::optional<std::size_t> conj_index(std::size_t i, std::size_t j) const;

 private:
  AtomLanguage base_;
  int depth_;
  std::vector<Formula> formulas_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace nml
