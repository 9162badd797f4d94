#include <doctest.h>

#include <sstream>

#include "deldd/errors.hpp"
#include "deldd/manager.hpp"
#include "oracles.hpp"

using namespace deldd;
using deldd::testing::oracle_size;
using deldd::testing::random_formula;
using deldd::testing::state_from_index;
using deldd::testing::truth_table;

namespace {

Vocabulary pqr() { return Vocabulary({"p", "q", "r"}); }

BoolFormula atom(std::uint32_t i) { return BoolFormula::atom(VarId{i}); }

// q & ~r over {p, q, r}
BoolFormula q_not_r() { return atom(1) && !atom(2); }

State st(std::initializer_list<std::uint32_t> vars, std::size_t n = 3) {
  State s(n);
  for (auto v : vars) s.set(VarId{v});
  return s;
}

}  // namespace

TEST_CASE("new manager") {
  DdManager t0(pqr(), Rule::T0);
  CHECK(t0.stored_nodes() == 0);
  CHECK(t0.is_terminal(t0.terminal(false)));
  CHECK(t0.is_terminal(t0.terminal(true)));
  CHECK(t0.node_count(t0.constant(false)) == 0);

  DdManager c(pqr(), Rule::EQ, true);
  CHECK(c.complement_edges());
  CHECK(c.backend().name() == "BDDc");

  CHECK_THROWS_AS(DdManager(Vocabulary({"p"}), Rule::E1, true), ConfigError);
  CHECK_THROWS_AS(DdManager(Vocabulary(), Rule::EQ), ConfigError);
}

TEST_CASE("constants depend on the rule") {
  DdManager eq(pqr(), Rule::EQ);
  CHECK(eq.is_terminal(eq.constant(true)));
  CHECK(eq.node_count(eq.constant(true)) == 0);

  DdManager t0(pqr(), Rule::T0);
  const NodeRef one = t0.constant(true);
  CHECK(t0.node_count(one) == 3);
  NodeRef cur = one;
  for (std::uint32_t level = 0; level < 3; ++level) {
    REQUIRE_FALSE(t0.is_terminal(cur));
    CHECK(t0.level(cur) == level);
    CHECK(t0.then_child(cur) == t0.else_child(cur));
    cur = t0.then_child(cur);
  }
  CHECK(t0.is_terminal(cur));

  DdManager t1(pqr(), Rule::T1);
  CHECK(t1.node_count(t1.constant(true)) == 0);
  CHECK(t1.node_count(t1.constant(false)) == 3);
}

TEST_CASE("make_node applies the elimination pattern") {
  DdManager eq(pqr(), Rule::EQ);
  const NodeRef s = eq.literal(VarId{2});
  CHECK(eq.make_node(VarId{1}, s, s) == s);

  DdManager t0(pqr(), Rule::T0);
  const NodeRef s0 = t0.make_node(VarId{2}, t0.terminal(true), t0.terminal(false));
  CHECK(t0.make_node(VarId{1}, t0.terminal(false), s0) == s0);
  const NodeRef fresh = t0.make_node(VarId{1}, s0, t0.terminal(false));
  CHECK(fresh != s0);
  CHECK(t0.level(fresh) == 1);

  DdManager t1(pqr(), Rule::T1);
  const NodeRef s1 = t1.make_node(VarId{2}, t1.terminal(false), t1.terminal(true));
  CHECK(t1.make_node(VarId{0}, t1.terminal(true), s1) == s1);
  DdManager e0(pqr(), Rule::E0);
  CHECK(e0.make_node(VarId{0}, e0.terminal(true), e0.terminal(false)) == e0.terminal(true));
  DdManager e1(pqr(), Rule::E1);
  CHECK(e1.make_node(VarId{0}, e1.terminal(false), e1.terminal(true)) == e1.terminal(false));

  CHECK_THROWS_AS(eq.make_node(VarId{2}, s, eq.terminal(false)), OrderingError);
  DdManager other(pqr(), Rule::EQ);
  CHECK_THROWS_AS(eq.apply(BoolOp::And, s, other.literal(VarId{0})), ManagerMismatchError);
}

TEST_CASE("diagrams of q & ~r over p, q, r") {
  struct Expect {
    Backend backend;
    std::size_t count;
    std::vector<std::uint32_t> levels;  // multiset of node variables
  };
  const std::vector<Expect> cases = {
      {{Rule::EQ, false}, 2, {1, 2}},       {{Rule::T0, false}, 2, {0, 1}}, {{Rule::T1, false}, 4, {0, 1, 2, 2}},
      {{Rule::E0, false}, 2, {0, 2}},       {{Rule::E1, false}, 3, {0, 1, 2}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.backend.name());
    DdManager m(pqr(), c.backend);
    const NodeRef f = m.from_formula(q_not_r());
    CHECK(m.node_count(f) == c.count);
    std::vector<std::uint32_t> levels;
    std::vector<NodeRef> stack{f};
    std::set<std::uint32_t> seen;
    while (!stack.empty()) {
      NodeRef x = stack.back();
      stack.pop_back();
      if (m.is_terminal(x) || !seen.insert(x.edge() >> 1).second) continue;
      levels.push_back(m.level(x));
      stack.push_back(m.then_child(x));
      stack.push_back(m.else_child(x));
    }
    std::sort(levels.begin(), levels.end());
    CHECK(levels == c.levels);
    CHECK(m.evaluate(f, st({0, 1})));
    CHECK_FALSE(m.evaluate(f, st({0, 1, 2})));
  }
}

TEST_CASE("from_formula is canonical") {
  for (const auto& b : all_backends()) {
    DdManager m(pqr(), b);
    const NodeRef a = m.apply(BoolOp::And, m.from_formula(atom(1)), m.from_formula(!atom(2)));
    CHECK(a == m.from_formula(q_not_r()));
    CHECK(m.from_formula(atom(0) || !atom(0)) == m.constant(true));
  }
  DdManager m(pqr(), Rule::EQ);
  CHECK_THROWS_AS(m.from_formula(atom(7)), VocabularyError);
}

TEST_CASE("cofactors") {
  DdManager eq(pqr(), Rule::EQ);
  auto [h, l] = eq.cofactors(eq.constant(true), VarId{1});
  CHECK(h == eq.constant(true));
  CHECK(l == eq.constant(true));

  DdManager t0(pqr(), Rule::T0);
  const NodeRef f = t0.make_node(VarId{2}, t0.terminal(true), t0.terminal(false));
  auto [h0, l0] = t0.cofactors(f, VarId{1});
  CHECK(h0 == t0.terminal(false));
  CHECK(l0 == f);

  // T1: a terminal 0 read from level 2 is "r is true"; its r=1 cofactor is 1.
  DdManager t1(pqr(), Rule::T1);
  auto [h1, l1] = t1.cofactors(t1.terminal(false), VarId{2});
  CHECK(h1 == t1.terminal(true));
  CHECK(l1 == t1.terminal(false));
  CHECK_THROWS_AS(t1.cofactors(t1.make_node(VarId{0}, t1.terminal(false), t1.terminal(true)), VarId{1}),
                  OrderingError);
}

TEST_CASE("apply, negate, restrict, quantify") {
  for (const auto& b : all_backends()) {
    CAPTURE(b.name());
    DdManager m(pqr(), b);
    const NodeRef f = m.from_formula(q_not_r());
    CHECK(m.apply(BoolOp::And, f, m.constant(true)) == f);
    CHECK(m.apply(BoolOp::Xor, f, f) == m.constant(false));
    CHECK(m.negate(m.constant(false)) == m.constant(true));
    CHECK(m.negate(m.negate(f)) == f);

    const NodeRef q = m.from_formula(atom(1));
    CHECK(m.restrict(f, VarId{2}, false) == q);
    CHECK(m.restrict(f, VarId{2}, true) == m.constant(false));
    CHECK(m.restrict(f, VarId{0}, true) == f);

    const std::vector<VarId> p{VarId{0}}, qv{VarId{1}}, qr{VarId{1}, VarId{2}};
    CHECK(m.forall_set(f, p) == f);
    CHECK(m.forall_set(f, qv) == m.constant(false));
    CHECK(m.exists_set(f, qr) == m.constant(true));
    CHECK(m.check_invariants().empty());
  }
  DdManager t0(pqr(), Rule::T0);
  CHECK(t0.node_count(t0.negate(t0.from_formula(q_not_r()))) == 4);
}

TEST_CASE("evaluate follows the jump semantics") {
  DdManager t0(pqr(), Rule::T0);
  const NodeRef f = t0.from_formula(q_not_r());
  CHECK(t0.evaluate(f, st({0, 1})));
  CHECK_FALSE(t0.evaluate(f, st({0, 1, 2})));
  DdManager eq(pqr(), Rule::EQ);
  CHECK(eq.evaluate(eq.from_formula(q_not_r()), st({1})));
}

TEST_CASE("node counts of the extremal Muddy Children laws") {
  for (std::size_t n : {1U, 4U, 9U}) {
    const Vocabulary vocab = Vocabulary::numbered("p", n, 1);
    std::vector<BoolFormula> atoms;
    for (std::uint32_t i = 0; i < n; ++i) atoms.push_back(atom(i));
    const auto any = BoolFormula::disjunction(atoms);
    const auto all = BoolFormula::conjunction(atoms);
    DdManager eq(vocab, Rule::EQ);
    CHECK(eq.node_count(eq.from_formula(any)) == n);
    DdManager t1(vocab, Rule::T1);
    CHECK(t1.node_count(t1.from_formula(any)) == 0);
    DdManager e0(vocab, Rule::E0);
    CHECK(e0.node_count(e0.from_formula(all)) == 0);
  }
}

TEST_CASE("sat_count") {
  for (const auto& b : all_backends()) {
    DdManager m(pqr(), b);
    CHECK(m.sat_count(m.from_formula(q_not_r())) == 2);
    CHECK(m.sat_count(m.constant(true)) == 8);
    CHECK(m.sat_count(m.constant(false)) == 0);
    const auto states = m.enumerate(m.from_formula(q_not_r()));
    REQUIRE(states.size() == 2);
    CHECK(states[0] == st({1}));
    CHECK(states[1] == st({0, 1}));
  }
  DdManager m(Vocabulary::numbered("p", 3, 1), Rule::EQ);
  const NodeRef law = m.from_formula(atom(0) || atom(1) || atom(2));
  CHECK(m.sat_count(law) == 7);
  CHECK(m.density(law) == Rational(7, 8));
}

TEST_CASE("complement_vars") {
  for (const auto& b : all_backends()) {
    DdManager m(pqr(), b);
    CHECK(m.complement_vars(m.from_formula(q_not_r())) == m.from_formula(!atom(1) && atom(2)));
  }
}

TEST_CASE("node limit") {
  DdManager m(Vocabulary::numbered("x", 12), Rule::EQ, false, 20);
  std::vector<BoolFormula> parts;
  for (std::uint32_t i = 0; i < 6; ++i) parts.push_back(BoolFormula::exclusive({atom(i), atom(11 - i)}));
  CHECK_THROWS_AS(m.from_formula(BoolFormula::conjunction(parts)), ResourceError);
}

TEST_CASE("dot output marks edge roles") {
  DdManager m(pqr(), Rule::EQ);
  std::ostringstream out;
  m.write_dot(out, m.from_formula(q_not_r()));
  const std::string dot = out.str();
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(dot.find("label=\"q\"") != std::string::npos);
}

// ---------------------------------------------------------------------------
// Properties against the truth-table and reduced-tree oracles.

TEST_CASE("property: canonicity, semantics and sizes match the oracles") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const Vocabulary vocab = Vocabulary::numbered("v", n);
    const BoolFormula f = random_formula(rng, n, 4);
    const BoolFormula g = random_formula(rng, n, 4);
    const auto tf = truth_table(f, n);
    const auto tg = truth_table(g, n);
    for (const auto& b : all_backends()) {
      CAPTURE(b.name());
      DdManager m(vocab, b);
      const NodeRef df = m.from_formula(f);
      const NodeRef dg = m.from_formula(g);
      CHECK((df == dg) == (tf == tg));
      CHECK(m.node_count(df) == oracle_size(tf, n, b));
      std::size_t models = 0;
      for (std::uint64_t i = 0; i < tf.size(); ++i) {
        const State s = state_from_index(n, i);
        REQUIRE(m.evaluate(df, s) == tf[i]);
        models += tf[i];
      }
      CHECK(m.sat_count(df) == models);
      for (BoolOp op : {BoolOp::And, BoolOp::Or, BoolOp::Xor, BoolOp::Imp}) {
        const NodeRef r = m.apply(op, df, dg);
        for (std::uint64_t i = 0; i < tf.size(); ++i) {
          REQUIRE(m.evaluate(r, state_from_index(n, i)) == eval_op(op, tf[i], tg[i]));
        }
      }
      CHECK(m.check_invariants().empty());
    }
  }
}

TEST_CASE("property: quantifiers agree with restriction and with brute force") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const Vocabulary vocab = Vocabulary::numbered("v", n);
    const BoolFormula f = random_formula(rng, n, 4);
    const BoolFormula g = random_formula(rng, n, 3);
    std::vector<VarId> vars;
    for (std::uint32_t i = 0; i < n; ++i)
      if (rng() % 2) vars.push_back(VarId{i});
    for (const auto& b : all_backends()) {
      CAPTURE(b.name());
      DdManager m(vocab, b);
      const NodeRef df = m.from_formula(f);
      const NodeRef dg = m.from_formula(g);
      NodeRef by_restrict = df;
      NodeRef by_restrict_ex = df;
      for (VarId v : vars) {
        by_restrict = m.apply(BoolOp::And, m.restrict(by_restrict, v, true), m.restrict(by_restrict, v, false));
        by_restrict_ex = m.apply(BoolOp::Or, m.restrict(by_restrict_ex, v, true), m.restrict(by_restrict_ex, v, false));
      }
      const NodeRef fa = m.forall_set(df, vars);
      CHECK(fa == by_restrict);
      CHECK(m.exists_set(df, vars) == by_restrict_ex);
      CHECK(m.forall_apply(BoolOp::Imp, df, dg, vars) == m.forall_set(m.apply(BoolOp::Imp, df, dg), vars));
      CHECK(m.exists_apply(BoolOp::And, df, dg, vars) == m.exists_set(m.apply(BoolOp::And, df, dg), vars));
      for (std::uint64_t i = 0; i < (1ULL << n); ++i) {
        State s = state_from_index(n, i);
        bool all = true;
        for (std::uint64_t ext = 0; ext < (1ULL << vars.size()); ++ext) {
          State t = s;
          for (std::size_t k = 0; k < vars.size(); ++k) t.set(vars[k], (ext >> k) & 1U);
          all = all && f.holds(t);
        }
        REQUIRE(m.evaluate(fa, s) == all);
      }
    }
  }
}

TEST_CASE("property: complement edges never grow the graph") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const Vocabulary vocab = Vocabulary::numbered("v", n);
    const BoolFormula f = random_formula(rng, n, 5);
    DdManager eq(vocab, Rule::EQ);
    DdManager c(vocab, Rule::EQ, true);
    CHECK(c.node_count(c.from_formula(f)) <= eq.node_count(eq.from_formula(f)));
  }
}

TEST_CASE("property: import_from preserves the function across backends") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const Vocabulary vocab = Vocabulary::numbered("v", n);
    const BoolFormula f = random_formula(rng, n, 4);
    for (const auto& from : all_backends()) {
      DdManager src(vocab, from);
      const NodeRef df = src.from_formula(f);
      for (const auto& to : all_backends()) {
        DdManager dst(vocab, to);
        CHECK(dst.import_from(src, df) == dst.from_formula(f));
      }
    }
  }
}

TEST_CASE("property: sat_count matches brute force up to 12 variables") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 8 + rng() % 5;
    const BoolFormula f = random_formula(rng, n, 6);
    std::uint64_t models = 0;
    for (bool bit : truth_table(f, n)) models += bit;
    for (const auto& b : all_backends()) {
      DdManager m(Vocabulary::numbered("v", n), b);
      CHECK(m.sat_count(m.from_formula(f)) == models);
    }
  }
}
