#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "deldd/bool_formula.hpp"
#include "deldd/vocabulary.hpp"

namespace deldd {

/// 0-based agent index into a knowledge structure's observation lists.
struct AgentId {
  std::uint32_t index = 0;

  friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

/// Immutable DEL formula. Derived connectives (Or, Xor, Implies, KnowsWhether,
/// AnnounceWhether) are kept as nodes so that printing preserves them;
/// expand() rewrites them into the primitive fragment.
class DelFormula {
 public:
  enum class Kind { Top, Bot, Atom, Not, And, Or, Xor, Implies, Knows, KnowsWhether, Announce, AnnounceWhether };

  DelFormula();  // Top

  static DelFormula top();
  static DelFormula bot();
  static DelFormula atom(VarId v);
  static DelFormula negation(DelFormula f);
  static DelFormula conjunction(std::vector<DelFormula> fs);
  static DelFormula disjunction(std::vector<DelFormula> fs);
  static DelFormula exclusive(std::vector<DelFormula> fs);
  static DelFormula implication(DelFormula lhs, DelFormula rhs);
  static DelFormula knows(AgentId i, DelFormula f);
  static DelFormula knows_whether(AgentId i, DelFormula f);
  /// [!announced] then
  static DelFormula announce(DelFormula announced, DelFormula then);
  /// [?!announced] then
  static DelFormula announce_whether(DelFormula announced, DelFormula then);
  static DelFormula from_bool(const BoolFormula& f);

  Kind kind() const { return node_->kind; }
  VarId var() const { return node_->var; }
  AgentId agent() const { return node_->agent; }
  std::span<const DelFormula> children() const { return node_->children; }

  /// True when the formula contains no K, Kw or announcement operator.
  bool is_boolean() const;
  /// Converts a Boolean formula; throws ValidationError on modal operators.
  BoolFormula to_bool() const;
  /// Rewrites Kw and [?!] into K and [!]: Kw_i f = K_i f | K_i ~f, [?!a] f = [!a] f & [!~a] f.
  DelFormula expand() const;
  /// Largest variable and agent index + 1 used, for validation against a structure.
  std::uint32_t var_bound() const;
  std::uint32_t agent_bound() const;
  std::size_t depth() const;

  /// Structural equality.
  bool operator==(const DelFormula& other) const;

 private:
  struct Node {
    Kind kind = Kind::Top;
    VarId var{};
    AgentId agent{};
    std::vector<DelFormula> children;
  };
  explicit DelFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static DelFormula make(Kind kind, std::vector<DelFormula> children, VarId var = {}, AgentId agent = {});

  std::shared_ptr<const Node> node_;
};

inline DelFormula operator!(DelFormula f) { return DelFormula::negation(std::move(f)); }
inline DelFormula operator&&(DelFormula a, DelFormula b) {
  return DelFormula::conjunction({std::move(a), std::move(b)});
}
inline DelFormula operator||(DelFormula a, DelFormula b) {
  return DelFormula::disjunction({std::move(a), std::move(b)});
}

}  // namespace deldd
