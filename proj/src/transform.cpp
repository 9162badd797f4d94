#include "deldd/transform.hpp"

#include <unordered_map>

#include "deldd/errors.hpp"

namespace deldd {

Rule leaf_flipped(Rule rule) {
  switch (rule) {
    case Rule::EQ:
      return Rule::EQ;
    case Rule::T0:
      return Rule::T1;
    case Rule::T1:
      return Rule::T0;
    case Rule::E0:
      return Rule::E1;
    case Rule::E1:
      return Rule::E0;
  }
  return rule;
}

Rule edge_flipped(Rule rule) {
  switch (rule) {
    case Rule::EQ:
      return Rule::EQ;
    case Rule::T0:
      return Rule::E0;
    case Rule::E0:
      return Rule::T0;
    case Rule::T1:
      return Rule::E1;
    case Rule::E1:
      return Rule::T1;
  }
  return rule;
}

namespace {

void check_pair(const DdManager& src, const DdManager& dst, Rule expected) {
  if (!(src.vocabulary() == dst.vocabulary())) throw VocabularyError("flip requires identical vocabularies");
  if (dst.rule() != expected || dst.complement_edges() != src.complement_edges()) {
    throw ConfigError("flip target must use rule " + std::string(to_string(expected)));
  }
}

template <class CopyNode>
NodeRef copy_graph(const DdManager& src, NodeRef f, DdManager& dst, bool flip_leaf, CopyNode copy_node) {
  std::unordered_map<std::uint32_t, NodeRef> memo;
  auto rec = [&](auto&& self, NodeRef e) -> NodeRef {
    if (e.complemented()) return dst.negate(self(self, src.regular(e)));
    if (src.is_terminal(e)) return dst.terminal(src.terminal_value(e) != flip_leaf);
    if (auto it = memo.find(e.edge()); it != memo.end()) return it->second;
    const NodeRef hi = self(self, src.then_child(e));
    const NodeRef lo = self(self, src.else_child(e));
    const NodeRef out = copy_node(VarId{src.level(e)}, hi, lo);
    memo.emplace(e.edge(), out);
    return out;
  };
  return rec(rec, f);
}

}  // namespace

NodeRef flip_leaves(const DdManager& src, NodeRef f, DdManager& dst) {
  check_pair(src, dst, leaf_flipped(src.rule()));
  return copy_graph(src, f, dst, true,
                    [&](VarId v, NodeRef hi, NodeRef lo) { return dst.make_raw_node(v, hi, lo); });
}

NodeRef flip_edges(const DdManager& src, NodeRef f, DdManager& dst) {
  if (src.complement_edges()) throw UnsupportedError("flip_edges is not defined with complement edges");
  check_pair(src, dst, edge_flipped(src.rule()));
  return copy_graph(src, f, dst, false,
                    [&](VarId v, NodeRef hi, NodeRef lo) { return dst.make_raw_node(v, lo, hi); });
}

NodeRef convert_via_t0(DdManager& t0, NodeRef g, DdManager& target) {
  if (t0.rule() != Rule::T0) throw ConfigError("convert_via_t0 expects a T0 source manager");
  switch (target.rule()) {
    case Rule::T0:
      return target.import_from(t0, g);
    case Rule::T1:
      // T1 graph of g is the leaf flip of the T0 graph of ~g.
      return flip_leaves(t0, t0.negate(g), target);
    case Rule::E0: {
      // E0 graph of g is the edge flip of the T0 graph of g with variables complemented.
      return flip_edges(t0, t0.complement_vars(g), target);
    }
    case Rule::E1: {
      // E1 graph of g is the edge flip of the leaf flip of the T0 graph of ~g with variables complemented.
      DdManager t1(t0.vocabulary(), Rule::T1);
      const NodeRef mid = flip_leaves(t0, t0.negate(t0.complement_vars(g)), t1);
      return flip_edges(t1, mid, target);
    }
    case Rule::EQ:
      break;
  }
  throw ConfigError("convert_via_t0 targets one of T0, T1, E0, E1");
}

NodeRef variant_via_t0(DdManager& target, const BoolFormula& f) {
  DdManager t0(target.vocabulary(), Rule::T0);
  return convert_via_t0(t0, t0.from_formula(f), target);
}

bool isomorphic(const DdManager& a, NodeRef fa, const DdManager& b, NodeRef fb) {
  std::unordered_map<std::uint32_t, std::uint32_t> forward;
  std::unordered_map<std::uint32_t, std::uint32_t> backward;
  auto rec = [&](auto&& self, NodeRef x, NodeRef y) -> bool {
    if (x.complemented() != y.complemented()) return false;
    if (a.is_terminal(x) || b.is_terminal(y)) {
      return a.is_terminal(x) && b.is_terminal(y) && a.terminal_value(x) == b.terminal_value(y);
    }
    const std::uint32_t xi = x.edge() >> 1;
    const std::uint32_t yi = y.edge() >> 1;
    auto fw = forward.find(xi);
    auto bw = backward.find(yi);
    if (fw != forward.end() || bw != backward.end()) {
      return fw != forward.end() && bw != backward.end() && fw->second == yi && bw->second == xi;
    }
    if (a.level(x) != b.level(y)) return false;
    forward.emplace(xi, yi);
    backward.emplace(yi, xi);
    return self(self, a.then_child(x), b.then_child(y)) && self(self, a.else_child(x), b.else_child(y));
  };
  return rec(rec, fa, fb);
}

}  // namespace deldd
