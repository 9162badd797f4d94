#include "deldd/formula.hpp"

#include <algorithm>

#include "deldd/errors.hpp"

namespace deldd {

DelFormula::DelFormula() : DelFormula(top()) {}

DelFormula DelFormula::make(Kind kind, std::vector<DelFormula> children, VarId var, AgentId agent) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->var = var;
  node->agent = agent;
  node->children = std::move(children);
  return DelFormula(std::move(node));
}

DelFormula DelFormula::top() {
  static const DelFormula t = make(Kind::Top, {});
  return t;
}

DelFormula DelFormula::bot() {
  static const DelFormula b = make(Kind::Bot, {});
  return b;
}

DelFormula DelFormula::atom(VarId v) { return make(Kind::Atom, {}, v); }
DelFormula DelFormula::negation(DelFormula f) { return make(Kind::Not, {std::move(f)}); }
DelFormula DelFormula::conjunction(std::vector<DelFormula> fs) { return make(Kind::And, std::move(fs)); }
DelFormula DelFormula::disjunction(std::vector<DelFormula> fs) { return make(Kind::Or, std::move(fs)); }
DelFormula DelFormula::exclusive(std::vector<DelFormula> fs) { return make(Kind::Xor, std::move(fs)); }

DelFormula DelFormula::implication(DelFormula lhs, DelFormula rhs) {
  return make(Kind::Implies, {std::move(lhs), std::move(rhs)});
}

DelFormula DelFormula::knows(AgentId i, DelFormula f) { return make(Kind::Knows, {std::move(f)}, {}, i); }

DelFormula DelFormula::knows_whether(AgentId i, DelFormula f) {
  return make(Kind::KnowsWhether, {std::move(f)}, {}, i);
}

DelFormula DelFormula::announce(DelFormula announced, DelFormula then) {
  return make(Kind::Announce, {std::move(announced), std::move(then)});
}

DelFormula DelFormula::announce_whether(DelFormula announced, DelFormula then) {
  return make(Kind::AnnounceWhether, {std::move(announced), std::move(then)});
}

DelFormula DelFormula::from_bool(const BoolFormula& f) {
  std::vector<DelFormula> kids;
  for (const auto& c : f.children()) kids.push_back(from_bool(c));
  switch (f.kind()) {
    case BoolFormula::Kind::Top:
      return top();
    case BoolFormula::Kind::Bot:
      return bot();
    case BoolFormula::Kind::Atom:
      return atom(f.var());
    case BoolFormula::Kind::Not:
      return negation(kids[0]);
    case BoolFormula::Kind::And:
      return conjunction(std::move(kids));
    case BoolFormula::Kind::Or:
      return disjunction(std::move(kids));
    case BoolFormula::Kind::Xor:
      return exclusive(std::move(kids));
    case BoolFormula::Kind::Implies:
      return implication(kids[0], kids[1]);
  }
  return top();
}

bool DelFormula::is_boolean() const {
  switch (kind()) {
    case Kind::Knows:
    case Kind::KnowsWhether:
    case Kind::Announce:
    case Kind::AnnounceWhether:
      return false;
    default:
      return std::all_of(children().begin(), children().end(), [](const DelFormula& c) { return c.is_boolean(); });
  }
}

BoolFormula DelFormula::to_bool() const {
  std::vector<BoolFormula> kids;
  for (const auto& c : children()) kids.push_back(c.to_bool());
  switch (kind()) {
    case Kind::Top:
      return BoolFormula::top();
    case Kind::Bot:
      return BoolFormula::bot();
    case Kind::Atom:
      return BoolFormula::atom(var());
    case Kind::Not:
      return BoolFormula::negation(kids[0]);
    case Kind::And:
      return BoolFormula::conjunction(std::move(kids));
    case Kind::Or:
      return BoolFormula::disjunction(std::move(kids));
    case Kind::Xor:
      return BoolFormula::exclusive(std::move(kids));
    case Kind::Implies:
      return BoolFormula::implication(kids[0], kids[1]);
    default:
      throw ValidationError("formula contains a modal operator where a Boolean formula is required");
  }
}

DelFormula DelFormula::expand() const {
  std::vector<DelFormula> kids;
  for (const auto& c : children()) kids.push_back(c.expand());
  switch (kind()) {
    case Kind::KnowsWhether:
      return knows(agent(), kids[0]) || knows(agent(), !kids[0]);
    case Kind::AnnounceWhether:
      return announce(kids[0], kids[1]) && announce(!kids[0], kids[1]);
    case Kind::Top:
    case Kind::Bot:
    case Kind::Atom:
      return *this;
    default:
      return make(kind(), std::move(kids), var(), agent());
  }
}

std::uint32_t DelFormula::var_bound() const {
  std::uint32_t bound = kind() == Kind::Atom ? var().index + 1 : 0;
  for (const auto& c : children()) bound = std::max(bound, c.var_bound());
  return bound;
}

std::uint32_t DelFormula::agent_bound() const {
  const bool modal = kind() == Kind::Knows || kind() == Kind::KnowsWhether;
  std::uint32_t bound = modal ? agent().index + 1 : 0;
  for (const auto& c : children()) bound = std::max(bound, c.agent_bound());
  return bound;
}

std::size_t DelFormula::depth() const {
  std::size_t d = 0;
  for (const auto& c : children()) d = std::max(d, c.depth() + 1);
  return d;
}

bool DelFormula::operator==(const DelFormula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || var() != other.var() || agent() != other.agent()) return false;
  return std::equal(children().begin(), children().end(), other.children().begin(), other.children().end());
}

}  // namespace deldd
