#include <doctest.h>

#include "deldd/errors.hpp"
#include "deldd/knowledge.hpp"
#include "deldd/kripke.hpp"
#include "oracles.hpp"

using namespace deldd;
using deldd::testing::random_del_formula;
using deldd::testing::random_formula;
using deldd::testing::random_structure;

namespace {

const DelFormula p = DelFormula::atom(VarId{0});
const DelFormula q = DelFormula::atom(VarId{1});
const AgentId one{0};
const AgentId two{1};

// V = {p, q}, law p -> q, agent 1 sees p, agent 2 sees q.
KnowledgeStructure example(Backend b = {}) {
  auto m = std::make_shared<DdManager>(Vocabulary({"p", "q"}), b);
  return KnowledgeStructure::from_formula(m, BoolFormula::implication(BoolFormula::atom(VarId{0}), BoolFormula::atom(VarId{1})),
                                          {{VarId{0}}, {VarId{1}}});
}

State st(bool vp, bool vq) {
  State s(2);
  s.set(VarId{0}, vp);
  s.set(VarId{1}, vq);
  return s;
}

}  // namespace

TEST_CASE("translate on the two-agent example") {
  for (const auto& b : all_backends()) {
    CAPTURE(b.name());
    const auto f = example(b);
    auto& m = f.manager();
    const NodeRef dp = m.literal(VarId{0});
    CHECK(translate(f, DelFormula::knows(one, p)) == dp);
    CHECK(translate(f, DelFormula::knows(one, q)) == dp);
    CHECK(translate(f, p || !p) == m.constant(true));
    CHECK(translate(f, DelFormula::knows_whether(one, p)) == translate(f, DelFormula::knows_whether(one, p).expand()));
  }
}

TEST_CASE("eval_scene") {
  const auto f = example();
  CHECK(eval_scene(Scene(f, st(true, true)), DelFormula::knows(one, p)));
  CHECK(eval_scene(Scene(f, st(false, false)), DelFormula::knows(two, !p)));
  CHECK_FALSE(eval_scene(Scene(f, st(false, true)), DelFormula::knows(two, !p)));
  CHECK(eval_scene(Scene(f, st(false, false)), DelFormula::announce(p && !p, DelFormula::bot())));
  CHECK_THROWS_AS(Scene(f, st(true, false)), InvalidSceneError);
  CHECK_THROWS_AS(Scene(f, State(3)), InvalidSceneError);
  CHECK_THROWS_AS(translate(f, DelFormula::knows(AgentId{5}, p)), ValidationError);
  CHECK_THROWS_AS(translate(f, DelFormula::atom(VarId{2})), VocabularyError);
}

TEST_CASE("update and announce_whether") {
  const auto f = example();
  auto& m = f.manager();
  CHECK(update(f, DelFormula::top()).law() == f.law());
  const auto fp = update(f, p);
  CHECK(fp.law() == m.from_formula(BoolFormula::atom(VarId{0}) && BoolFormula::atom(VarId{1})));
  CHECK(m.sat_count(fp.law()) == 1);
  CHECK(update(fp, p).law() == fp.law());

  const Scene s0(f, st(false, false));
  const Scene w = announce_whether(s0, p);
  CHECK(w.structure().law() == m.apply(BoolOp::And, f.law(), m.literal(VarId{0}, false)));
  CHECK(w.actual() == s0.actual());
  CHECK(announce_whether(Scene(f, st(true, true)), p).structure().law() == fp.law());

  const auto empty = update(f, p && !p);
  CHECK(m.sat_count(empty.law()) == 0);
  CHECK(translate(empty, DelFormula::knows(one, DelFormula::bot())) == m.constant(true));
}

TEST_CASE("states and sparsity") {
  const auto f = example();
  const auto states = states_of(f);
  REQUIRE(states.size() == 3);
  CHECK(states[0] == st(false, false));
  CHECK(states[1] == st(false, true));
  CHECK(states[2] == st(true, true));
  CHECK(sparsity(f) == Rational(3, 4));
}

TEST_CASE("structure validation") {
  auto m = std::make_shared<DdManager>(Vocabulary({"p"}), Rule::EQ);
  auto other = std::make_shared<DdManager>(Vocabulary({"p"}), Rule::EQ);
  CHECK_THROWS_AS(KnowledgeStructure(m, other->constant(true), {}), ManagerMismatchError);
  CHECK_THROWS_AS(KnowledgeStructure(m, m->constant(true), {{VarId{3}}}), VocabularyError);
  CHECK_THROWS_AS(KnowledgeStructure(m, m->constant(true), {{}, {}}, {"a", "a"}), ValidationError);
  const KnowledgeStructure k(m, m->constant(true), {{}, {VarId{0}}}, {"alice", "bob"});
  CHECK(k.find_agent("bob") == AgentId{1});
  CHECK_FALSE(k.find_agent("carol").has_value());
  CHECK(k.unobserved(AgentId{0}).size() == 1);
}

TEST_CASE("property: translation agrees with the Kripke oracle on every backend") {
  std::mt19937_64 rng(31337);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const std::size_t agents = 1 + rng() % 3;
    const BoolFormula law = random_formula(rng, n, 3);
    const std::uint64_t seed = rng();
    std::vector<DelFormula> formulas;
    for (int k = 0; k < 4; ++k) formulas.push_back(random_del_formula(rng, n, agents, 3));
    std::vector<std::vector<bool>> reference;
    for (const auto& b : all_backends()) {
      CAPTURE(b.name());
      std::mt19937_64 obs_rng(seed);
      auto m = std::make_shared<DdManager>(Vocabulary::numbered("v", n), b);
      const auto f = random_structure(obs_rng, m, agents, law);
      const KripkeModel km = ks_to_kripke(f);
      std::vector<bool> results;
      for (const auto& phi : formulas) {
        const auto truth = truth_set(km, phi);
        const NodeRef t = translate(f, phi);
        CHECK(t == translate(f, phi.expand()));
        for (std::size_t w = 0; w < km.world_count(); ++w) {
          REQUIRE(m->evaluate(t, km.valuation(w)) == truth[w]);
          results.push_back(truth[w]);
          ++checked;
        }
        CHECK(m->sat_count(update(f, phi).law()) <= m->sat_count(f.law()));
      }
      if (reference.empty()) reference.push_back(results);
      CHECK(results == reference.front());
    }
  }
  CHECK(checked > 0);
}
