#include "deldd/manager.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "deldd/errors.hpp"

namespace deldd {

namespace {

std::atomic<std::uint32_t> next_manager_id{1};

bool symmetric(BoolOp op) {
  return eval_op(op, false, true) == eval_op(op, true, false);
}

// Truth table of x |-> op(x, x).
BoolOp diagonal(BoolOp op) {
  bool u0 = eval_op(op, false, false);
  bool u1 = eval_op(op, true, true);
  if (u0 == u1) return u0 ? BoolOp::True : BoolOp::False;
  return u1 ? BoolOp::First : BoolOp::NotFirst;
}

// Truth table of x |-> op(c, x) (first_fixed) or x |-> op(x, c), as a unary op on the first argument.
BoolOp fix_one(BoolOp op, bool c, bool first_fixed) {
  bool u0 = first_fixed ? eval_op(op, c, false) : eval_op(op, false, c);
  bool u1 = first_fixed ? eval_op(op, c, true) : eval_op(op, true, c);
  if (u0 == u1) return u0 ? BoolOp::True : BoolOp::False;
  return u1 ? BoolOp::First : BoolOp::NotFirst;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::EQ:
      return "EQ";
    case Rule::T0:
      return "T0";
    case Rule::T1:
      return "T1";
    case Rule::E0:
      return "E0";
    case Rule::E1:
      return "E1";
  }
  return "?";
}

std::string_view Backend::name() const {
  if (rule == Rule::EQ) return complement_edges ? "BDDc" : "BDD";
  return to_string(rule);
}

const std::array<Backend, 6>& all_backends() {
  static const std::array<Backend, 6> backends{{{Rule::EQ, false},
                                                 {Rule::EQ, true},
                                                 {Rule::T0, false},
                                                 {Rule::T1, false},
                                                 {Rule::E0, false},
                                                 {Rule::E1, false}}};
  return backends;
}

Backend parse_backend(std::string_view text) {
  const std::string t = lower(text);
  if (t == "bdd" || t == "eq") return {Rule::EQ, false};
  if (t == "bddc") return {Rule::EQ, true};
  if (t == "t0") return {Rule::T0, false};
  if (t == "t1") return {Rule::T1, false};
  if (t == "e0") return {Rule::E0, false};
  if (t == "e1") return {Rule::E1, false};
  throw ValidationError("unknown backend '" + std::string(text) + "'");
}

std::size_t DdManager::default_node_limit() {
  if (const char* env = std::getenv("DELDD_NODE_LIMIT")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultNodeLimit;
}

DdManager::DdManager(Vocabulary vocab, Rule rule, bool complement_edges, std::size_t node_limit)
    : vocab_(std::move(vocab)),
      n_(static_cast<std::uint32_t>(vocab_.size())),
      rule_(rule),
      complement_(complement_edges),
      id_(next_manager_id++),
      node_limit_(node_limit) {
  if (vocab_.empty()) throw ConfigError("vocabulary must not be empty");
  if (complement_ && rule_ != Rule::EQ) {
    throw ConfigError("complement edges are only supported with the EQ rule");
  }
  nodes_.push_back({n_, 0, 0});
  nodes_.push_back({n_, 0, 0});
  for (int b = 0; b < 2; ++b) {
    auto& c = constants_[b];
    c.assign(n_ + 1, 0);
    c[n_] = terminal_edge(b == 1);
    for (std::uint32_t l = n_; l-- > 0;) c[l] = mk(l, c[l + 1], c[l + 1]);
  }
  frame_nodes_ = nodes_.size();
}

// ---------------------------------------------------------------------------
// Node store

DdManager::Edge DdManager::terminal_edge(bool value) const {
  if (complement_) return value ? 2U : 3U;
  return value ? 2U : 0U;
}

int DdManager::const_value(Edge e, std::uint32_t level) const {
  if (e == constants_[0][level]) return 0;
  if (e == constants_[1][level]) return 1;
  return -1;
}

bool DdManager::jump_closed(BoolOp op) const {
  if (rule_ == Rule::EQ) return true;
  const bool c = rule_ == Rule::T1 || rule_ == Rule::E1;
  return eval_op(op, c, c) == c;
}

DdManager::Edge DdManager::mk(std::uint32_t var, Edge hi, Edge lo) {
  switch (rule_) {
    case Rule::EQ:
      if (hi == lo) return hi;
      break;
    case Rule::T0:
      if (hi == 0U) return lo;
      break;
    case Rule::T1:
      if (hi == 2U) return lo;
      break;
    case Rule::E0:
      if (lo == 0U) return hi;
      break;
    case Rule::E1:
      if (lo == 2U) return hi;
      break;
  }
  return mk_raw(var, hi, lo);
}

DdManager::Edge DdManager::mk_raw(std::uint32_t var, Edge hi, Edge lo) {
  Edge out = 0;
  if (complement_ && (hi & 1U)) {
    hi ^= 1U;
    lo ^= 1U;
    out = 1U;
  }
  const detail::Key128 key{(static_cast<std::uint64_t>(var) << 32) | hi, lo};
  if (const std::uint32_t* found = unique_.find(key)) return (*found << 1) | out;
  if (stored_nodes() >= node_limit_) {
    throw ResourceError("node limit of " + std::to_string(node_limit_) + " exceeded");
  }
  const auto idx = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({var, hi, lo});
  unique_.insert(key, idx);
  return (idx << 1) | out;
}

std::pair<DdManager::Edge, DdManager::Edge> DdManager::cofactors_at(Edge f, std::uint32_t level) const {
  const Node& node = nodes_[index(f)];
  if (node.var == level) {
    const Edge c = f & 1U;
    return {node.hi ^ c, node.lo ^ c};
  }
  switch (rule_) {
    case Rule::EQ:
      return {f, f};
    case Rule::T0:
      return {0U, f};
    case Rule::T1:
      return {2U, f};
    case Rule::E0:
      return {f, 0U};
    case Rule::E1:
      return {f, 2U};
  }
  return {f, f};
}

bool DdManager::cache_find(CacheTag tag, std::uint32_t aux, std::uint32_t level, Edge f, Edge g, Edge& out) const {
  const detail::Key128 key{(static_cast<std::uint64_t>(tag) << 56) | (static_cast<std::uint64_t>(aux) << 32) | level,
                           (static_cast<std::uint64_t>(f) << 32) | g};
  if (const std::uint32_t* v = cache_.find(key)) {
    out = *v;
    return true;
  }
  return false;
}

void DdManager::cache_store(CacheTag tag, std::uint32_t aux, std::uint32_t level, Edge f, Edge g, Edge value) {
  const detail::Key128 key{(static_cast<std::uint64_t>(tag) << 56) | (static_cast<std::uint64_t>(aux) << 32) | level,
                           (static_cast<std::uint64_t>(f) << 32) | g};
  cache_.insert(key, value);
}

void DdManager::clear_caches() { cache_.clear(); }

void DdManager::check_ref(NodeRef f) const {
  if (f.manager_ != id_) throw ManagerMismatchError("handle belongs to a different manager");
  if (index(f.edge_) >= nodes_.size()) throw ManagerMismatchError("dangling handle");
}

// ---------------------------------------------------------------------------
// Construction

NodeRef DdManager::constant(bool value) const { return wrap(const_at(value, 0)); }

NodeRef DdManager::terminal(bool value) const { return wrap(terminal_edge(value)); }

NodeRef DdManager::literal(VarId v, bool positive) {
  const std::pair<VarId, bool> lit{v, positive};
  return cube(std::span(&lit, 1));
}

NodeRef DdManager::cube(std::span<const std::pair<VarId, bool>> literals) {
  std::vector<int> wanted(n_, -1);
  for (auto [v, b] : literals) {
    if (v.index >= n_) throw VocabularyError("variable index " + std::to_string(v.index) + " out of range");
    const int want = b ? 1 : 0;
    if (wanted[v.index] >= 0 && wanted[v.index] != want) return constant(false);
    wanted[v.index] = want;
  }
  Edge r = const_at(true, n_);
  for (std::uint32_t l = n_; l-- > 0;) {
    const Edge zero = const_at(false, l + 1);
    if (wanted[l] == 1)
      r = mk(l, r, zero);
    else if (wanted[l] == 0)
      r = mk(l, zero, r);
    else
      r = mk(l, r, r);
  }
  return wrap(r);
}

NodeRef DdManager::make_node(VarId v, NodeRef hi, NodeRef lo) {
  check_ref(hi);
  check_ref(lo);
  if (v.index >= n_) throw VocabularyError("variable index " + std::to_string(v.index) + " out of range");
  if (level_of(hi.edge_) <= v.index || level_of(lo.edge_) <= v.index) {
    throw OrderingError("children of a node on " + vocab_.name(v) + " must lie strictly below it");
  }
  return wrap(mk(v.index, hi.edge_, lo.edge_));
}

NodeRef DdManager::make_raw_node(VarId v, NodeRef hi, NodeRef lo) {
  check_ref(hi);
  check_ref(lo);
  if (v.index >= n_) throw VocabularyError("variable index " + std::to_string(v.index) + " out of range");
  if (level_of(hi.edge_) <= v.index || level_of(lo.edge_) <= v.index) {
    throw OrderingError("children of a node on " + vocab_.name(v) + " must lie strictly below it");
  }
  return wrap(mk_raw(v.index, hi.edge_, lo.edge_));
}

NodeRef DdManager::from_formula(const BoolFormula& f) { return wrap(from_formula_rec(f)); }

DdManager::Edge DdManager::from_formula_rec(const BoolFormula& f) {
  using K = BoolFormula::Kind;
  auto reduce = [&](BoolOp op, bool empty_value) {
    std::vector<Edge> items;
    items.reserve(f.children().size());
    for (const auto& c : f.children()) items.push_back(from_formula_rec(c));
    if (items.empty()) return const_at(empty_value, 0);
    // Pairwise reduction keeps intermediate diagrams balanced.
    while (items.size() > 1) {
      std::vector<Edge> next;
      next.reserve((items.size() + 1) / 2);
      for (std::size_t i = 0; i + 1 < items.size(); i += 2) next.push_back(apply_rec(op, items[i], items[i + 1], 0));
      if (items.size() % 2) next.push_back(items.back());
      items = std::move(next);
    }
    return items.front();
  };
  switch (f.kind()) {
    case K::Top:
      return const_at(true, 0);
    case K::Bot:
      return const_at(false, 0);
    case K::Atom:
      if (f.var().index >= n_) throw VocabularyError("formula atom outside the vocabulary");
      return literal(f.var()).edge_;
    case K::Not:
      return not_rec(from_formula_rec(f.children()[0]), 0);
    case K::And:
      return reduce(BoolOp::And, true);
    case K::Or:
      return reduce(BoolOp::Or, false);
    case K::Xor:
      return reduce(BoolOp::Xor, false);
    case K::Implies:
      return apply_rec(BoolOp::Imp, from_formula_rec(f.children()[0]), from_formula_rec(f.children()[1]), 0);
  }
  throw std::logic_error("unreachable formula kind");
}

// ---------------------------------------------------------------------------
// Operations

NodeRef DdManager::apply(BoolOp op, NodeRef f, NodeRef g) {
  check_ref(f);
  check_ref(g);
  return wrap(apply_rec(op, f.edge_, g.edge_, 0));
}

NodeRef DdManager::negate(NodeRef f) {
  check_ref(f);
  return wrap(not_rec(f.edge_, 0));
}

DdManager::Edge DdManager::not_rec(Edge f, std::uint32_t level) {
  if (complement_) return f ^ 1U;
  if (const int c = const_value(f, level); c >= 0) return const_at(c == 0, level);
  if (rule_ == Rule::EQ) level = level_of(f);
  Edge out;
  if (cache_find(kNot, 0, level, f, 0, out)) return out;
  const auto [hi, lo] = cofactors_at(f, level);
  const Edge h = not_rec(hi, level + 1);
  const Edge l = not_rec(lo, level + 1);
  out = mk(level, h, l);
  cache_store(kNot, 0, level, f, 0, out);
  return out;
}

DdManager::Edge DdManager::apply_rec(BoolOp op, Edge f, Edge g, std::uint32_t level) {
  if (f == g) {
    op = diagonal(op);
  } else if (complement_ && f == (g ^ 1U)) {
    // op(x, not x)
    const bool u0 = eval_op(op, false, true);
    const bool u1 = eval_op(op, true, false);
    op = u0 == u1 ? (u0 ? BoolOp::True : BoolOp::False) : (u1 ? BoolOp::First : BoolOp::NotFirst);
    g = f;
  } else {
    const int cf = const_value(f, level);
    const int cg = const_value(g, level);
    if (cf >= 0 && cg >= 0) return const_at(eval_op(op, cf, cg), level);
    if (cf >= 0) {
      op = fix_one(op, cf, true);
      f = g;
    } else if (cg >= 0) {
      op = fix_one(op, cg, false);
      g = f;
    }
  }
  switch (op) {
    case BoolOp::False:
      return const_at(false, level);
    case BoolOp::True:
      return const_at(true, level);
    case BoolOp::First:
      return f;
    case BoolOp::NotFirst:
      return not_rec(f, level);
    default:
      break;
  }

  if (symmetric(op) && f > g) std::swap(f, g);
  const std::uint32_t top = std::min(level_of(f), level_of(g));
  if (top > level && jump_closed(op)) level = top;

  const auto aux = static_cast<std::uint32_t>(op);
  Edge out;
  if (cache_find(kApply, aux, level, f, g, out)) return out;
  const auto [f1, f0] = cofactors_at(f, level);
  const auto [g1, g0] = cofactors_at(g, level);
  const Edge h = apply_rec(op, f1, g1, level + 1);
  const Edge l = apply_rec(op, f0, g0, level + 1);
  out = mk(level, h, l);
  cache_store(kApply, aux, level, f, g, out);
  return out;
}

std::uint32_t DdManager::intern_var_set(std::span<const VarId> vars) {
  std::vector<std::uint32_t> sorted;
  sorted.reserve(vars.size());
  for (VarId v : vars) {
    if (v.index >= n_) throw VocabularyError("variable index " + std::to_string(v.index) + " out of range");
    sorted.push_back(v.index);
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::uint32_t id = 0; id < var_sets_.size(); ++id) {
    if (var_sets_[id] == sorted) return id;
  }
  if (var_sets_.size() >= (1U << 16)) throw ResourceError("too many distinct quantification sets");
  std::vector<std::uint32_t> next(n_ + 1, n_);
  std::vector<bool> member(n_, false);
  for (auto v : sorted) member[v] = true;
  for (std::uint32_t l = n_; l-- > 0;) next[l] = member[l] ? l : next[l + 1];
  var_sets_.push_back(std::move(sorted));
  next_quantified_.push_back(std::move(next));
  return static_cast<std::uint32_t>(var_sets_.size() - 1);
}

DdManager::Edge DdManager::quantify(BoolOp op, Quant q, NodeRef f, NodeRef g, std::span<const VarId> vars) {
  check_ref(f);
  check_ref(g);
  const std::uint32_t set = intern_var_set(vars);
  return quant_rec(op, q, set, f.edge_, g.edge_, 0);
}

NodeRef DdManager::forall_set(NodeRef f, std::span<const VarId> vars) {
  return wrap(quantify(BoolOp::First, Quant::Forall, f, f, vars));
}

NodeRef DdManager::exists_set(NodeRef f, std::span<const VarId> vars) {
  return wrap(quantify(BoolOp::First, Quant::Exists, f, f, vars));
}

NodeRef DdManager::forall_apply(BoolOp op, NodeRef f, NodeRef g, std::span<const VarId> vars) {
  return wrap(quantify(op, Quant::Forall, f, g, vars));
}

NodeRef DdManager::exists_apply(BoolOp op, NodeRef f, NodeRef g, std::span<const VarId> vars) {
  return wrap(quantify(op, Quant::Exists, f, g, vars));
}

DdManager::Edge DdManager::quant_rec(BoolOp op, Quant q, std::uint32_t set, Edge f, Edge g, std::uint32_t level) {
  const auto& next = next_quantified_[set];
  if (next[level] == n_) return apply_rec(op, f, g, level);

  if (f == g) {
    op = diagonal(op);
  } else if (complement_ && f == (g ^ 1U)) {
    const bool u0 = eval_op(op, false, true);
    const bool u1 = eval_op(op, true, false);
    op = u0 == u1 ? (u0 ? BoolOp::True : BoolOp::False) : (u1 ? BoolOp::First : BoolOp::NotFirst);
    g = f;
  } else {
    const int cf = const_value(f, level);
    const int cg = const_value(g, level);
    if (cf >= 0 && cg >= 0) return const_at(eval_op(op, cf, cg), level);
    if (cf >= 0) {
      op = fix_one(op, cf, true);
      f = g;
    } else if (cg >= 0) {
      op = fix_one(op, cg, false);
      g = f;
    }
  }
  if (op == BoolOp::False) return const_at(false, level);
  if (op == BoolOp::True) return const_at(true, level);
  if (op == BoolOp::First || op == BoolOp::NotFirst) g = f;
  if (const int c = const_value(f, level); f == g && c >= 0) return const_at(eval_op(op, c, c), level);

  if (symmetric(op) && f > g) std::swap(f, g);
  const std::uint32_t top = std::min(level_of(f), level_of(g));
  if (top > level) {
    // Under EQ a skipped variable is irrelevant, so quantifying it is the identity.
    if (rule_ == Rule::EQ) {
      level = top;
      if (next[level] == n_) return apply_rec(op, f, g, level);
    } else if (jump_closed(op) && next[level] >= top) {
      level = top;
    }
  }

  const std::uint32_t aux = (set << 8) | (static_cast<std::uint32_t>(q) << 4) | static_cast<std::uint32_t>(op);
  Edge out;
  if (cache_find(kQuant, aux, level, f, g, out)) return out;

  const auto [f1, f0] = cofactors_at(f, level);
  const auto [g1, g0] = cofactors_at(g, level);
  if (next[level] == level) {
    const Edge absorbing = const_at(q == Quant::Exists, level + 1);
    const Edge h = quant_rec(op, q, set, f1, g1, level + 1);
    Edge r = h;
    if (h != absorbing) {
      const Edge l = quant_rec(op, q, set, f0, g0, level + 1);
      r = apply_rec(q == Quant::Forall ? BoolOp::And : BoolOp::Or, h, l, level + 1);
    }
    out = mk(level, r, r);
  } else {
    const Edge h = quant_rec(op, q, set, f1, g1, level + 1);
    const Edge l = quant_rec(op, q, set, f0, g0, level + 1);
    out = mk(level, h, l);
  }
  cache_store(kQuant, aux, level, f, g, out);
  return out;
}

NodeRef DdManager::restrict(NodeRef f, VarId v, bool value) {
  check_ref(f);
  if (v.index >= n_) throw VocabularyError("variable index " + std::to_string(v.index) + " out of range");
  return wrap(restrict_rec(f.edge_, v.index, value, 0));
}

DdManager::Edge DdManager::restrict_rec(Edge f, std::uint32_t var, bool value, std::uint32_t level) {
  if (level > var) return f;
  if (const_value(f, level) >= 0) return f;
  const std::uint32_t top = level_of(f);
  if (top > var && rule_ == Rule::EQ) return f;
  // Skipped levels above var commute with restriction under every rule.
  level = std::min(top, var);

  const std::uint32_t aux = (var << 1) | (value ? 1U : 0U);
  Edge out;
  if (cache_find(kRestrict, aux, level, f, 0, out)) return out;
  const auto [f1, f0] = cofactors_at(f, level);
  if (level == var) {
    const Edge r = value ? f1 : f0;
    out = mk(level, r, r);
  } else {
    const Edge h = restrict_rec(f1, var, value, level + 1);
    const Edge l = restrict_rec(f0, var, value, level + 1);
    out = mk(level, h, l);
  }
  cache_store(kRestrict, aux, level, f, 0, out);
  return out;
}

NodeRef DdManager::complement_vars(NodeRef f) {
  check_ref(f);
  return wrap(complement_vars_rec(f.edge_, 0));
}

DdManager::Edge DdManager::complement_vars_rec(Edge f, std::uint32_t level) {
  if (const_value(f, level) >= 0) return f;
  if (complement_ && (f & 1U)) return complement_vars_rec(f ^ 1U, level) ^ 1U;
  if (rule_ == Rule::EQ) level = level_of(f);
  Edge out;
  if (cache_find(kComplementVars, 0, level, f, 0, out)) return out;
  const auto [f1, f0] = cofactors_at(f, level);
  const Edge h = complement_vars_rec(f0, level + 1);
  const Edge l = complement_vars_rec(f1, level + 1);
  out = mk(level, h, l);
  cache_store(kComplementVars, 0, level, f, 0, out);
  return out;
}

std::pair<NodeRef, NodeRef> DdManager::cofactors(NodeRef f, VarId v) const {
  check_ref(f);
  if (v.index >= n_) throw VocabularyError("variable index " + std::to_string(v.index) + " out of range");
  if (level_of(f.edge_) < v.index) {
    throw OrderingError("cofactor variable " + vocab_.name(v) + " lies below the top of the diagram");
  }
  const auto [hi, lo] = cofactors_at(f.edge_, v.index);
  return {wrap(hi), wrap(lo)};
}

// ---------------------------------------------------------------------------
// Queries

bool DdManager::terminal_value(NodeRef f) const {
  check_ref(f);
  if (!is_terminal(f)) throw UnsupportedError("not a terminal");
  return (index(f.edge_) == 1) != f.complemented();
}

NodeRef DdManager::regular(NodeRef f) const {
  check_ref(f);
  return wrap(f.edge_ & ~1U);
}

NodeRef DdManager::import_from(const DdManager& src, NodeRef f) {
  src.check_ref(f);
  if (!(src.vocab_ == vocab_)) throw VocabularyError("cannot import across different vocabularies");
  std::unordered_map<std::uint64_t, Edge> memo;
  auto rec = [&](auto&& self, Edge e, std::uint32_t level) -> Edge {
    if (const int c = src.const_value(e, level); c >= 0) return const_at(c == 1, level);
    const std::uint64_t key = (static_cast<std::uint64_t>(e) << 32) | level;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const auto [hi, lo] = src.cofactors_at(e, level);
    const Edge h = self(self, hi, level + 1);
    const Edge l = self(self, lo, level + 1);
    const Edge out = mk(level, h, l);
    memo.emplace(key, out);
    return out;
  };
  return wrap(rec(rec, f.edge_, 0));
}

NodeRef DdManager::then_child(NodeRef f) const {
  check_ref(f);
  if (is_terminal(f)) throw UnsupportedError("terminals have no children");
  return wrap(nodes_[index(f.edge_)].hi);
}

NodeRef DdManager::else_child(NodeRef f) const {
  check_ref(f);
  if (is_terminal(f)) throw UnsupportedError("terminals have no children");
  return wrap(nodes_[index(f.edge_)].lo);
}

bool DdManager::is_constant(NodeRef f, bool value) const {
  check_ref(f);
  return f.edge_ == const_at(value, 0);
}

bool DdManager::evaluate(NodeRef f, const State& s) const {
  check_ref(f);
  if (s.size() != n_) throw VocabularyError("state size does not match the vocabulary");
  Edge e = f.edge_;
  for (std::uint32_t l = 0; l < n_; ++l) {
    const auto [hi, lo] = cofactors_at(e, l);
    e = s[l] ? hi : lo;
  }
  return (index(e) == 1) != ((e & 1U) != 0);
}

std::size_t DdManager::node_count(NodeRef f) const {
  check_ref(f);
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<std::uint32_t> stack{index(f.edge_)};
  std::size_t count = 0;
  while (!stack.empty()) {
    const std::uint32_t i = stack.back();
    stack.pop_back();
    if (i < 2 || seen[i]) continue;
    seen[i] = 1;
    ++count;
    stack.push_back(index(nodes_[i].hi));
    stack.push_back(index(nodes_[i].lo));
  }
  return count;
}

BigInt DdManager::sat_count(NodeRef f) const {
  check_ref(f);
  std::unordered_map<std::uint32_t, BigInt> memo;
  auto pow2 = [](std::uint32_t k) { return BigInt(1) << k; };

  // Models over levels [level, n) of the function e denotes when read from level.
  auto count_edge = [&](auto&& self, Edge e, std::uint32_t level) -> BigInt {
    const std::uint32_t top = level_of(e);
    BigInt base;
    const std::uint32_t i = index(e);
    if (i < 2) {
      base = i == 1 ? 1 : 0;
    } else if (auto it = memo.find(i); it != memo.end()) {
      base = it->second;
    } else {
      const Node& node = nodes_[i];
      base = self(self, node.hi, top + 1) + self(self, node.lo, top + 1);
      memo.emplace(i, base);
    }
    if (e & 1U) base = pow2(n_ - top) - base;
    const std::uint32_t skipped = top - level;
    if (skipped == 0) return base;
    switch (rule_) {
      case Rule::EQ:
        return base << skipped;
      case Rule::T0:
      case Rule::E0:
        return base;
      case Rule::T1:
      case Rule::E1:
        return base + (pow2(n_ - level) - pow2(n_ - top));
    }
    return base;
  };
  return count_edge(count_edge, f.edge_, 0);
}

Rational DdManager::density(NodeRef f) const {
  return Rational(sat_count(f), BigInt(1) << n_);
}

std::vector<State> DdManager::enumerate(NodeRef f, std::size_t limit) const {
  check_ref(f);
  std::vector<State> out;
  State cur(n_);
  auto rec = [&](auto&& self, Edge e, std::uint32_t level) -> void {
    if (const_value(e, level) == 0) return;
    if (level == n_) {
      if (out.size() >= limit) throw ResourceError("more than " + std::to_string(limit) + " satisfying states");
      out.push_back(cur);
      return;
    }
    const auto [hi, lo] = cofactors_at(e, level);
    const VarId v{level};
    cur.set(v, false);
    self(self, lo, level + 1);
    cur.set(v, true);
    self(self, hi, level + 1);
    cur.set(v, false);
  };
  rec(rec, f.edge_, 0);
  return out;
}

std::string DdManager::check_invariants() const {
  std::ostringstream problems;
  if (unique_.size() != nodes_.size() - 2) problems << "unique table size mismatch; ";
  for (std::uint32_t i = 2; i < nodes_.size(); ++i) {
    const Node& node = nodes_[i];
    if (node.var >= n_) problems << "node " << i << " has invalid variable; ";
    if (level_of(node.hi) <= node.var || level_of(node.lo) <= node.var) problems << "node " << i << " unordered; ";
    if (complement_ && (node.hi & 1U)) problems << "node " << i << " has a complemented then-edge; ";
    bool eliminable = false;
    switch (rule_) {
      case Rule::EQ:
        eliminable = node.hi == node.lo;
        break;
      case Rule::T0:
        eliminable = node.hi == 0U;
        break;
      case Rule::T1:
        eliminable = node.hi == 2U;
        break;
      case Rule::E0:
        eliminable = node.lo == 0U;
        break;
      case Rule::E1:
        eliminable = node.lo == 2U;
        break;
    }
    if (eliminable) problems << "node " << i << " matches the elimination rule; ";
    const detail::Key128 key{(static_cast<std::uint64_t>(node.var) << 32) | node.hi, node.lo};
    const std::uint32_t* found = unique_.find(key);
    if (!found || *found != i) problems << "node " << i << " is not uniquely hash-consed; ";
  }
  return problems.str();
}

void DdManager::write_dot(std::ostream& out, NodeRef f) const {
  check_ref(f);
  out << "digraph dd {\n";
  out << "  root [shape=none,label=\"" << to_string(rule_) << (complement_ ? "c" : "") << "\"];\n";
  auto edge_attr = [&](Edge e, bool dashed) {
    std::string attr = dashed ? "style=dashed" : "style=solid";
    if (e & 1U) attr += ",arrowhead=odot";
    return attr;
  };
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<std::uint32_t> stack{index(f.edge_)};
  bool terminals[2] = {false, false};
  out << "  root -> n" << index(f.edge_) << " [" << edge_attr(f.edge_, false) << "];\n";
  while (!stack.empty()) {
    const std::uint32_t i = stack.back();
    stack.pop_back();
    if (i < 2) {
      terminals[i] = true;
      continue;
    }
    if (seen[i]) continue;
    seen[i] = 1;
    const Node& node = nodes_[i];
    out << "  n" << i << " [label=\"" << vocab_.name(VarId{node.var}) << "\"];\n";
    out << "  n" << i << " -> n" << index(node.hi) << " [" << edge_attr(node.hi, false) << "];\n";
    out << "  n" << i << " -> n" << index(node.lo) << " [" << edge_attr(node.lo, true) << "];\n";
    stack.push_back(index(node.hi));
    stack.push_back(index(node.lo));
  }
  for (int t = 0; t < 2; ++t) {
    if (terminals[t]) out << "  n" << t << " [shape=box,label=\"" << t << "\"];\n";
  }
  out << "}\n";
}

}  // namespace deldd
