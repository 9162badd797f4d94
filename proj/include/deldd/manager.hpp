#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "deldd/bool_formula.hpp"
#include "deldd/detail/flat_map.hpp"
#include "deldd/vocabulary.hpp"

namespace deldd {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Node elimination rule. EQ removes (s,s) nodes; the others remove nodes whose
/// Then (T) or Else (E) edge leads to the named terminal.
enum class Rule : std::uint8_t { EQ, T0, T1, E0, E1 };

std::string_view to_string(Rule rule);

/// One of the six measured representations: a rule plus the complement-edge flag.
struct Backend {
  Rule rule = Rule::EQ;
  bool complement_edges = false;

  std::string_view name() const;  // BDD, BDDc, T0, T1, E0, E1
  bool operator==(const Backend&) const = default;
};

/// BDD, BDDc, T0, T1, E0, E1 in column order.
const std::array<Backend, 6>& all_backends();
/// Accepts column names (BDD, T0, ...) and CLI spellings (eq, bddc, t0, ...), case-insensitive.
Backend parse_backend(std::string_view text);

/// Binary Boolean operator encoded by its truth table: bit (2a + b) holds op(a, b).
enum class BoolOp : std::uint8_t {
  False = 0b0000,
  And = 0b1000,
  Or = 0b1110,
  Xor = 0b0110,
  Iff = 0b1001,
  Imp = 0b1011,
  First = 0b1100,
  NotFirst = 0b0011,
  True = 0b1111,
};

constexpr bool eval_op(BoolOp op, bool a, bool b) {
  return (static_cast<unsigned>(op) >> ((a ? 2U : 0U) | (b ? 1U : 0U))) & 1U;
}

/// Handle to a function stored in one manager. Only meaningful together with
/// the manager that produced it.
class NodeRef {
 public:
  NodeRef() = default;

  std::uint32_t manager_id() const { return manager_; }
  std::uint32_t edge() const { return edge_; }
  bool complemented() const { return edge_ & 1U; }

  bool operator==(const NodeRef&) const = default;

 private:
  friend class DdManager;
  NodeRef(std::uint32_t manager, std::uint32_t edge) : manager_(manager), edge_(edge) {}

  std::uint32_t manager_ = 0;
  std::uint32_t edge_ = 0;
};

/// Hash-consed store of ordered decision diagrams over a fixed vocabulary,
/// reduced under a single elimination rule.
///
/// An edge into a node at level j from level i < j skips the levels in
/// between; each skipped variable is read with the rule's jump semantics
/// (EQ: irrelevant, T0: must be 0, T1: 1 short-circuits to true,
/// E0: must be 1, E1: 0 short-circuits to true). Constants are therefore
/// vocabulary dependent and not necessarily terminals.
class DdManager {
 public:
  static constexpr std::size_t kDefaultNodeLimit = 10'000'000;

  DdManager(Vocabulary vocab, Rule rule, bool complement_edges = false,
            std::size_t node_limit = default_node_limit());
  DdManager(Vocabulary vocab, Backend backend, std::size_t node_limit = default_node_limit())
      : DdManager(std::move(vocab), backend.rule, backend.complement_edges, node_limit) {}

  DdManager(const DdManager&) = delete;
  DdManager& operator=(const DdManager&) = delete;

  /// 10^7, or the value of DELDD_NODE_LIMIT when set.
  static std::size_t default_node_limit();

  const Vocabulary& vocabulary() const { return vocab_; }
  std::size_t var_count() const { return n_; }
  Rule rule() const { return rule_; }
  bool complement_edges() const { return complement_; }
  Backend backend() const { return {rule_, complement_}; }
  std::uint32_t id() const { return id_; }

  /// Internal nodes created since construction. Terminals and the per-level
  /// constant chains built by the constructor (non-empty only for rules whose
  /// constants are not terminals) belong to the fixed frame and are excluded.
  std::size_t stored_nodes() const { return nodes_.size() - frame_nodes_; }
  std::size_t node_limit() const { return node_limit_; }
  void set_node_limit(std::size_t limit) { node_limit_ = limit; }

  // Construction.
  NodeRef constant(bool value) const;
  NodeRef literal(VarId v, bool positive = true);
  /// Applies the elimination rule, then hash-conses. Children are read from level v+1.
  NodeRef make_node(VarId v, NodeRef hi, NodeRef lo);
  NodeRef from_formula(const BoolFormula& f);
  /// Conjunction of literals, built bottom-up without apply.
  NodeRef cube(std::span<const std::pair<VarId, bool>> literals);

  // Boolean operations.
  NodeRef apply(BoolOp op, NodeRef f, NodeRef g);
  NodeRef negate(NodeRef f);
  NodeRef restrict(NodeRef f, VarId v, bool value);
  NodeRef forall_set(NodeRef f, std::span<const VarId> vars);
  NodeRef exists_set(NodeRef f, std::span<const VarId> vars);
  /// Quantifies op(f, g) over vars in a single pass; same result as
  /// forall_set(apply(op, f, g), vars) (resp. exists_set).
  NodeRef forall_apply(BoolOp op, NodeRef f, NodeRef g, std::span<const VarId> vars);
  NodeRef exists_apply(BoolOp op, NodeRef f, NodeRef g, std::span<const VarId> vars);
  /// f with every variable complemented: s |-> f(V \ s).
  NodeRef complement_vars(NodeRef f);

  /// (f|v=1, f|v=0) as seen from level v. Requires every node of f to sit at level >= v.
  std::pair<NodeRef, NodeRef> cofactors(NodeRef f, VarId v) const;

  // Queries.
  bool evaluate(NodeRef f, const State& s) const;
  /// Distinct internal nodes reachable from f; terminals and complement bits ignored.
  std::size_t node_count(NodeRef f) const;
  BigInt sat_count(NodeRef f) const;
  /// sat_count / 2^|V|
  Rational density(NodeRef f) const;
  /// Satisfying states in ascending State order. Throws ResourceError past limit.
  std::vector<State> enumerate(NodeRef f, std::size_t limit = 1U << 20) const;
  bool is_constant(NodeRef f, bool value) const;

  // Raw graph access.
  bool is_terminal(NodeRef f) const { return index(f.edge_) < 2; }
  /// Leaf label reached by a terminal reference, complement bit included.
  bool terminal_value(NodeRef f) const;
  /// Variable labelling the node f points to; vocabulary size for terminals.
  std::uint32_t level(NodeRef f) const { return level_of(f.edge_); }
  /// Children of the node f points to, without propagating f's complement bit.
  NodeRef then_child(NodeRef f) const;
  NodeRef else_child(NodeRef f) const;
  /// Hash-conses (v, hi, lo) without applying the elimination rule. Used by
  /// the graph transformations that map one reduced form onto another.
  NodeRef make_raw_node(VarId v, NodeRef hi, NodeRef lo);
  NodeRef terminal(bool value) const;
  /// f with its complement bit cleared.
  NodeRef regular(NodeRef f) const;

  /// Re-encodes a function held by another manager over the same vocabulary
  /// (any rule, with or without complement edges) into this one.
  NodeRef import_from(const DdManager& src, NodeRef f);

  /// Checks ordering, reduction, uniqueness and complement-edge discipline
  /// over the whole store. Returns an empty string when all hold.
  std::string check_invariants() const;

  /// Graphviz text; solid edges are Then, dashed are Else.
  void write_dot(std::ostream& out, NodeRef f) const;

  /// Interned quantification set; ids are stable for the manager's lifetime.
  std::uint32_t intern_var_set(std::span<const VarId> vars);

  void clear_caches();

 private:
  using Edge = std::uint32_t;

  struct Node {
    std::uint32_t var;
    Edge hi;
    Edge lo;
  };

  enum class Quant : std::uint8_t { None, Forall, Exists };

  enum CacheTag : std::uint8_t { kApply = 1, kQuant, kRestrict, kNot, kComplementVars };

  static std::uint32_t index(Edge e) { return e >> 1; }
  std::uint32_t level_of(Edge e) const { return nodes_[index(e)].var; }

  void check_ref(NodeRef f) const;
  NodeRef wrap(Edge e) const { return NodeRef(id_, e); }
  Edge terminal_edge(bool value) const;
  Edge const_at(bool value, std::uint32_t level) const { return constants_[value ? 1 : 0][level]; }
  int const_value(Edge e, std::uint32_t level) const;  // -1 when not constant
  bool jump_closed(BoolOp op) const;

  Edge mk(std::uint32_t var, Edge hi, Edge lo);
  Edge mk_raw(std::uint32_t var, Edge hi, Edge lo);
  std::pair<Edge, Edge> cofactors_at(Edge f, std::uint32_t level) const;

  Edge not_rec(Edge f, std::uint32_t level);
  Edge apply_rec(BoolOp op, Edge f, Edge g, std::uint32_t level);
  Edge quant_rec(BoolOp op, Quant q, std::uint32_t set, Edge f, Edge g, std::uint32_t level);
  Edge restrict_rec(Edge f, std::uint32_t var, bool value, std::uint32_t level);
  Edge complement_vars_rec(Edge f, std::uint32_t level);
  Edge from_formula_rec(const BoolFormula& f);
  Edge quantify(BoolOp op, Quant q, NodeRef f, NodeRef g, std::span<const VarId> vars);

  bool cache_find(CacheTag tag, std::uint32_t aux, std::uint32_t level, Edge f, Edge g, Edge& out) const;
  void cache_store(CacheTag tag, std::uint32_t aux, std::uint32_t level, Edge f, Edge g, Edge value);

  Vocabulary vocab_;
  std::uint32_t n_;
  Rule rule_;
  bool complement_;
  std::uint32_t id_;
  std::size_t node_limit_;
  std::size_t frame_nodes_ = 2;

  std::vector<Node> nodes_;
  detail::FlatMap128 unique_;
  detail::FlatMap128 cache_;
  std::array<std::vector<Edge>, 2> constants_;

  // next_quantified_[set][level]: smallest quantified level >= level, or n_.
  std::vector<std::vector<std::uint32_t>> next_quantified_;
  std::vector<std::vector<std::uint32_t>> var_sets_;
};

}  // namespace deldd
