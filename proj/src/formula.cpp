#include "nml/formula.hpp"

#include <cctype>

#include "nml/error.hpp"
#include "nml/semantics.hpp"

namespace nml {

Formula Formula::atom(std::size_t index) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, index, 0, index, {}}));
}

Formula Formula::conj(Formula left, Formula right) {
  const int d = 1 + std::max(left.depth(), right.depth());
  const std::size_t m = std::max(left.max_atom(), right.max_atom());
  return Formula(std::make_shared<const Node>(Node{Kind::And, 0, d, m, {std::move(left), std::move(right)}}));
}

Formula Formula::neg(Formula child) {
  const int d = 1 + child.depth();
  const std::size_t m = child.max_atom();
  return Formula(std::make_shared<const Node>(Node{Kind::Not, 0, d, m, {std::move(child)}}));
}

Formula Formula::disj(Formula left, Formula right) {
  return neg(conj(neg(std::move(left)), neg(std::move(right))));
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || depth() != other.depth()) return false;
  switch (kind()) {
    case Kind::Atom: return atom_index() == other.atom_index();
    case Kind::Not: return child() == other.child();
    case Kind::And: return left() == other.left() && right() == other.right();
  }
  return false;
}

std::string Formula::to_string(const AtomLanguage& language) const {
  switch (kind()) {
    case Kind::Atom:
      return atom_index() < language.size() ? language.name(atom_index()) : "#" + std::to_string(atom_index());
    case Kind::Not:
      return child().kind() == Kind::And ? "!(" + child().to_string(language) + ")"
                                         : "!" + child().to_string(language);
    case Kind::And: {
      auto side = [&](const Formula& f) {
        return f.kind() == Kind::And ? "(" + f.to_string(language) + ")" : f.to_string(language);
      };
      return side(left()) + " & " + side(right());
    }
  }
  return {};
}

std::string Formula::key() const {
  switch (kind()) {
    case Kind::Atom: return std::to_string(atom_index());
    case Kind::Not: return "!(" + child().key() + ")";
    case Kind::And: return "&(" + left().key() + "," + right().key() + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::string_view text, const AtomLanguage& language) : text_(text), language_(language) {}

  Formula parse() {
    Formula f = disjunction();
    skip_space();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  Formula disjunction() {
    Formula f = conjunction();
    while (accept('|')) f = Formula::disj(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept('&')) f = Formula::conj(std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (accept('!')) return Formula::neg(unary());
    if (accept('(')) {
      Formula f = disjunction();
      if (!accept(')')) error("expected ')'");
      return f;
    }
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) error(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                                                 : "unexpected end of formula");
    const std::string name(text_.substr(start, pos_ - start));
    auto index = language_.index_of(name);
    if (!index) error("unknown atom '" + name + "'");
    return Formula::atom(*index);
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void error(const std::string& what) const {
    throw InputError("formula \"" + std::string(text_) + "\" at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  const AtomLanguage& language_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const AtomLanguage& language) {
  return Parser(text, language).parse();
}

bool eval_formula(const ModelWorld& world, const Formula& phi, std::size_t model) {
  switch (phi.kind()) {
    case Formula::Kind::Atom:
      return world.satisfied(model).contains(static_cast<unsigned>(phi.atom_index()));
    case Formula::Kind::Not:
      return !eval_formula(world, phi.child(), model);
    case Formula::Kind::And:
      return eval_formula(world, phi.left(), model) && eval_formula(world, phi.right(), model);
  }
  return false;
}

ModelMask extension(const ModelWorld& world, const Formula& phi) {
  ModelMask out;
  for (std::size_t m = 0; m < world.model_count(); ++m)
    if (eval_formula(world, phi, m)) out |= ModelMask::singleton(static_cast<unsigned>(m));
  return out;
}

// ---------------------------------------------------------------------------
// ClosedLanguage
// ---------------------------------------------------------------------------

ClosedLanguage::ClosedLanguage(AtomLanguage base, int depth) : base_(std::move(base)), depth_(depth) {
  if (depth < 0) throw InputError("closure depth must be non-negative");
  for (std::size_t i = 0; i < base_.size(); ++i) formulas_.push_back(Formula::atom(i));
  std::size_t previous_begin = 0;
  for (int d = 1; d <= depth; ++d) {
    const std::size_t below = formulas_.size();  // formulas of depth ≤ d-1
    for (std::size_t i = previous_begin; i < below; ++i) formulas_.push_back(Formula::neg(formulas_[i]));
    for (std::size_t i = 0; i < below; ++i)
      for (std::size_t j = 0; j < below; ++j)
        if (i >= previous_begin || j >= previous_begin)
          formulas_.push_back(Formula::conj(formulas_[i], formulas_[j]));
    previous_begin = below;
  }
  for (std::size_t i = 0; i < formulas_.size(); ++i) index_.emplace(formulas_[i].key(), i);
}

std::optional<std::size_t> ClosedLanguage::index_of(const Formula& phi) const {
  auto it = index_.find(phi.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> ClosedLanguage::neg_index(std::size_t i) const {
  if (formulas_[i].depth() >= depth_) return std::nullopt;
  return index_of(Formula::neg(formulas_[i]));
}

std::optional<std::size_t> ClosedLanguage::conj_index(std::size_t i, std::size_t j) const {
  if (std::max(formulas_[i].depth(), formulas_[j].depth()) >= depth_) return std::nullopt;
  return index_of(Formula::conj(formulas_[i], formulas_[j]));
}

}  // namespace nml
