#include "deldd/bool_formula.hpp"

#include <stdexcept>

namespace deldd {

BoolFormula::BoolFormula() : BoolFormula(top()) {}

BoolFormula BoolFormula::make(Kind kind, std::vector<BoolFormula> children, VarId var) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->var = var;
  node->children = std::move(children);
  return BoolFormula(std::move(node));
}

BoolFormula BoolFormula::top() {
  static const BoolFormula t = make(Kind::Top, {});
  return t;
}

BoolFormula BoolFormula::bot() {
  static const BoolFormula b = make(Kind::Bot, {});
  return b;
}

BoolFormula BoolFormula::atom(VarId v) { return make(Kind::Atom, {}, v); }
BoolFormula BoolFormula::negation(BoolFormula f) { return make(Kind::Not, {std::move(f)}); }
BoolFormula BoolFormula::conjunction(std::vector<BoolFormula> fs) { return make(Kind::And, std::move(fs)); }
BoolFormula BoolFormula::disjunction(std::vector<BoolFormula> fs) { return make(Kind::Or, std::move(fs)); }
BoolFormula BoolFormula::exclusive(std::vector<BoolFormula> fs) { return make(Kind::Xor, std::move(fs)); }
BoolFormula BoolFormula::implication(BoolFormula lhs, BoolFormula rhs) {
  return make(Kind::Implies, {std::move(lhs), std::move(rhs)});
}

bool BoolFormula::holds(const State& s) const {
  switch (kind()) {
    case Kind::Top:
      return true;
    case Kind::Bot:
      return false;
    case Kind::Atom:
      return s.contains(var());
    case Kind::Not:
      return !children()[0].holds(s);
    case Kind::And:
      for (const auto& c : children())
        if (!c.holds(s)) return false;
      return true;
    case Kind::Or:
      for (const auto& c : children())
        if (c.holds(s)) return true;
      return false;
    case Kind::Xor: {
      bool acc = false;
      for (const auto& c : children()) acc ^= c.holds(s);
      return acc;
    }
    case Kind::Implies:
      return !children()[0].holds(s) || children()[1].holds(s);
  }
  throw std::logic_error("unreachable formula kind");
}

std::string BoolFormula::to_string(const Vocabulary& vocab) const {
  auto nary = [&](const char* op, const char* empty) {
    if (children().empty()) return std::string(empty);
    if (children().size() == 1) return children()[0].to_string(vocab);
    std::string out = "(";
    for (std::size_t i = 0; i < children().size(); ++i) {
      if (i) out += op;
      out += children()[i].to_string(vocab);
    }
    return out + ")";
  };
  switch (kind()) {
    case Kind::Top:
      return "Top";
    case Kind::Bot:
      return "Bot";
    case Kind::Atom:
      return vocab.name(var());
    case Kind::Not:
      return "~" + children()[0].to_string(vocab);
    case Kind::And:
      return nary(" & ", "Top");
    case Kind::Or:
      return nary(" | ", "Bot");
    case Kind::Xor:
      return nary(" ^ ", "Bot");
    case Kind::Implies:
      return "(" + children()[0].to_string(vocab) + " -> " + children()[1].to_string(vocab) + ")";
  }
  throw std::logic_error("unreachable formula kind");
}

}  // namespace deldd
