#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "deldd/vocabulary.hpp"

namespace deldd {

/// Immutable propositional formula. And/Or/Xor are n-ary; an empty And is
/// true, an empty Or or Xor is false.
class BoolFormula {
 public:
  enum class Kind { Top, Bot, Atom, Not, And, Or, Xor, Implies };

  BoolFormula();  // Top

  static BoolFormula top();
  static BoolFormula bot();
  static BoolFormula atom(VarId v);
  static BoolFormula negation(BoolFormula f);
  static BoolFormula conjunction(std::vector<BoolFormula> fs);
  static BoolFormula disjunction(std::vector<BoolFormula> fs);
  static BoolFormula exclusive(std::vector<BoolFormula> fs);
  static BoolFormula implication(BoolFormula lhs, BoolFormula rhs);

  Kind kind() const { return node_->kind; }
  VarId var() const { return node_->var; }
  std::span<const BoolFormula> children() const { return node_->children; }

  /// Truth-table semantics, independent of any diagram.
  bool holds(const State& s) const;
  std::string to_string(const Vocabulary& vocab) const;

 private:
  struct Node {
    Kind kind = Kind::Top;
    VarId var{};
    std::vector<BoolFormula> children;
  };
  explicit BoolFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static BoolFormula make(Kind kind, std::vector<BoolFormula> children, VarId var = {});

  std::shared_ptr<const Node> node_;
};

inline BoolFormula operator!(BoolFormula f) { return BoolFormula::negation(std::move(f)); }
inline BoolFormula operator&&(BoolFormula a, BoolFormula b) {
  return BoolFormula::conjunction({std::move(a), std::move(b)});
}
inline BoolFormula operator||(BoolFormula a, BoolFormula b) {
  return BoolFormula::disjunction({std::move(a), std::move(b)});
}

}  // namespace deldd
