#include <doctest.h>

#include "deldd/parser.hpp"
#include "oracles.hpp"

using namespace deldd;

namespace {

const char* kExample = R"(-- two agents, p implies q
VARS p,q
LAW (p -> q)
OBS a: p
OBS b: q
TRUE? {p,q} K a p
WHERE? K b ~p
VALID? Top
VALID? (K a q -> p)
)";

}  // namespace

TEST_CASE("parse the two-agent example") {
  const ModelFile mf = parse_model(kExample);
  CHECK(mf.vocabulary.names() == std::vector<std::string>{"p", "q"});
  CHECK(mf.agents == std::vector<std::string>{"a", "b"});
  REQUIRE(mf.queries.size() == 4);
  CHECK(mf.queries[0].kind == Query::Kind::True);
  CHECK(mf.queries[0].line == 6);
  const auto report = check_file(mf);
  CHECK(report == std::vector<std::string>{"TRUE? {p,q} K a p : true", "WHERE? K b ~p : {}", "VALID? Top : true",
                                           "VALID? (K a q -> p) : true"});
  for (const auto& b : all_backends()) CHECK(check_file(mf, b) == report);
}

TEST_CASE("single-line files") {
  const ModelFile mf = parse_model("VARS p,q  LAW (p -> q)  OBS a: p  OBS b: q  TRUE? {p,q} K a p");
  CHECK(check_file(mf).front() == "TRUE? {p,q} K a p : true");
  CHECK(parse_model("VARS p LAW Top OBS a:").observed.front().empty());
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_model("VARS p LAW Top TRUE? {} (p &");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("end of input") != std::string::npos);
    CHECK(e.line() == 1);
    CHECK(e.column() == 29);
  }
  try {
    parse_model("VARS p\nLAW q");
    FAIL("expected an undeclared identifier");
  } catch (const UndeclaredIdentifierError& e) {
    CHECK(e.name() == "q");
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_model("VARS p LAW Top VALID? K z p"), UndeclaredIdentifierError);
  CHECK_THROWS_AS(parse_model("VARS p, p LAW Top"), ParseError);
  CHECK_THROWS_AS(parse_model("VARS p LAW Top OBS a: p OBS a: p"), ParseError);
  CHECK_THROWS_AS(parse_model("VARS p LAW Top OBS a: p LAW Top"), ParseError);
  CHECK_THROWS_AS(parse_model("VARS p LAW (p & p -> p)"), ParseError);
  CHECK_THROWS_AS(parse_model("VARS p LAW (p -> p -> p)"), ParseError);
  CHECK_THROWS_AS(parse_model("VARS p LAW Top OBS a: p TRUE? {} (p $ p)"), ParseError);
  CHECK_THROWS_AS(parse_model("LAW Top"), ParseError);
  CHECK_THROWS_AS(parse_model("VARS p LAW Top OBS a: p VALID? p p"), ParseError);
  // the law must be Boolean
  CHECK_THROWS_AS(parse_model("VARS p LAW K a p OBS a: p"), ParseError);
}

TEST_CASE("formula entry point") {
  const Vocabulary v({"p", "q", "r"});
  const std::vector<std::string> agents{"a"};
  const auto p = DelFormula::atom(VarId{0});
  const auto q = DelFormula::atom(VarId{1});
  const auto r = DelFormula::atom(VarId{2});
  const AgentId a{0};
  CHECK(parse_formula("Kw a p", v, agents).expand() == (DelFormula::knows(a, p) || DelFormula::knows(a, !p)));
  CHECK(parse_formula("[?! p] q", v, agents).expand() == (DelFormula::announce(p, q) && DelFormula::announce(!p, q)));
  CHECK(parse_formula("(p & (q | ~r))", v, agents) == (p && (q || !r)));
  CHECK(parse_formula("(p & q & r)", v, agents) == DelFormula::conjunction({p, q, r}));
  CHECK(parse_formula("(p ^ q)", v, agents) == DelFormula::exclusive({p, q}));
  CHECK(parse_formula("  -- note\n [! p] K a q", v, agents) == DelFormula::announce(p, DelFormula::knows(a, q)));
  CHECK_THROWS_AS(parse_formula("p q", v, agents), ParseError);
  CHECK_THROWS_AS(parse_formula(std::string(5000, '~') + "p", v, agents), ParseError);
}

TEST_CASE("TRUE? on a state outside the law") {
  const ModelFile mf = parse_model("VARS p,q LAW (p -> q) OBS a: p TRUE? {p} p");
  CHECK_THROWS_AS(check_file(mf), InvalidSceneError);
}

TEST_CASE("WHERE? lists states in order") {
  const ModelFile mf = parse_model("VARS p,q LAW Top OBS a: p WHERE? (p | q) WHERE? Bot");
  CHECK(check_file(mf) == std::vector<std::string>{"WHERE? (p | q) : {q} {p} {p,q}", "WHERE? Bot : none"});
}

TEST_CASE("property: print then parse is the identity") {
  std::mt19937_64 rng(4242);
  const Vocabulary v = Vocabulary::numbered("v", 6);
  const std::vector<std::string> agents{"alice", "bob", "c3"};
  for (int trial = 0; trial < 500; ++trial) {
    const DelFormula f = testing::random_del_formula(rng, 6, 3, 5);
    const std::string text = print_formula(f, v, agents);
    const DelFormula g = parse_formula(text, v, agents);
    CHECK(g == f);
    CHECK(print_formula(g, v, agents) == text);
  }
}

TEST_CASE("property: the parser never crashes") {
  std::mt19937_64 rng(17);
  const std::string alphabet = "VARS LAW OBS VALID? WHERE? TRUE? Top Bot K Kw p q a ,:{}()~&|->^[![?!]--\n\t x";
  const std::string base = kExample;
  for (int trial = 0; trial < 3000; ++trial) {
    std::string text;
    if (trial % 2 == 0) {
      const std::size_t len = rng() % 60;
      for (std::size_t i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
    } else {
      text = base;
      const std::size_t edits = 1 + rng() % 4;
      for (std::size_t e = 0; e < edits; ++e) {
        const std::size_t at = rng() % text.size();
        if (rng() % 2) text.erase(at, 1 + rng() % 3);
        else text.insert(at, 1, alphabet[rng() % alphabet.size()]);
        if (text.empty()) break;
      }
    }
    try {
      const ModelFile mf = parse_model(text);
      (void)check_file(mf);
    } catch (const ParseError& e) {
      CHECK(e.line() >= 1);
      CHECK(e.column() >= 1);
    } catch (const Error&) {
      // semantic errors (e.g. a TRUE? state outside the law) are fine
    }
  }
}
