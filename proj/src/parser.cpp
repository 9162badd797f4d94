#include "deldd/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace deldd {

namespace {

enum class Tok { Ident, Comma, Colon, LBrace, RBrace, LParen, RParen, Tilde, And, Or, Arrow, Caret, Announce, AnnounceWhether, RBracket, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t line = 1;
  std::size_t col = 1;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      if (j < src.size() && src[j] == '?' && (word == "VALID" || word == "WHERE" || word == "TRUE")) {
        word += '?';
        ++j;
      }
      t.kind = Tok::Ident;
      t.text = word;
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    static constexpr std::pair<std::string_view, Tok> kPunct[] = {
        {"[?!", Tok::AnnounceWhether}, {"[!", Tok::Announce}, {"->", Tok::Arrow}, {",", Tok::Comma},
        {":", Tok::Colon},  {"{", Tok::LBrace},  {"}", Tok::RBrace}, {"(", Tok::LParen},
        {")", Tok::RParen}, {"~", Tok::Tilde},   {"&", Tok::And},    {"|", Tok::Or},
        {"^", Tok::Caret},  {"]", Tok::RBracket},
    };
    bool matched = false;
    for (auto [text, kind] : kPunct) {
      if (src.substr(i, text.size()) == text) {
        t.kind = kind;
        t.text = std::string(text);
        advance(text.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

bool is_reserved(const std::string& w) {
  static const std::set<std::string> kReserved = {"VARS", "LAW", "OBS", "VALID?", "WHERE?", "TRUE?", "Top", "Bot", "K", "Kw"};
  return kReserved.count(w) > 0;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Vocabulary* vocab, const std::vector<std::string>* agents)
      : toks_(std::move(tokens)), vocab_(vocab), agents_(agents) {}

  ModelFile model() {
    ModelFile mf;
    expect_word("VARS");
    std::vector<std::string> names;
    do {
      const Token& t = expect_ident("variable name");
      if (std::find(names.begin(), names.end(), t.text) != names.end()) {
        throw ParseError("variable '" + t.text + "' declared twice", t.line, t.column);
      }
      names.push_back(t.text);
    } while (accept(Tok::Comma));
    mf.vocabulary = Vocabulary(names);
    vocab_ = &mf.vocabulary;
    agents_ = &mf.agents;

    expect_word("LAW");
    const Token& law_tok = peek();
    const DelFormula law = formula();
    if (!law.is_boolean()) throw ParseError("the law must be a Boolean formula", law_tok.line, law_tok.column);
    mf.law = law.to_bool();

    while (peek_word("OBS")) {
      next();
      const Token& agent = expect_ident("agent name");
      if (std::find(mf.agents.begin(), mf.agents.end(), agent.text) != mf.agents.end()) {
        throw ParseError("agent '" + agent.text + "' declared twice", agent.line, agent.column);
      }
      expect(Tok::Colon, "':'");
      std::vector<VarId> obs;
      if (peek().kind == Tok::Ident && !is_reserved(peek().text)) {
        do {
          obs.push_back(variable(expect_ident("variable name")));
        } while (accept(Tok::Comma));
      }
      mf.agents.push_back(agent.text);
      mf.observed.push_back(std::move(obs));
    }

    while (peek().kind != Tok::End) {
      const Token& head = next();
      Query q;
      q.line = head.line;
      if (head.kind == Tok::Ident && head.text == "VALID?") {
        q.kind = Query::Kind::Valid;
      } else if (head.kind == Tok::Ident && head.text == "WHERE?") {
        q.kind = Query::Kind::Where;
      } else if (head.kind == Tok::Ident && head.text == "TRUE?") {
        q.kind = Query::Kind::True;
        expect(Tok::LBrace, "'{'");
        State s(mf.vocabulary.size());
        while (!accept(Tok::RBrace)) {
          s.set(variable(expect_ident("variable name")));
          accept(Tok::Comma);
        }
        q.state = std::move(s);
      } else {
        throw ParseError("expected a query (VALID?, WHERE? or TRUE?) but found " + describe(head), head.line,
                         head.column);
      }
      q.formula = formula();
      mf.queries.push_back(std::move(q));
    }
    return mf;
  }

  DelFormula single_formula() {
    DelFormula f = formula();
    if (peek().kind != Tok::End) {
      throw ParseError("unexpected " + describe(peek()) + " after formula", peek().line, peek().column);
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) {
      throw ParseError("expected " + what + " but found " + describe(peek()), peek().line, peek().column);
    }
    return next();
  }
  bool peek_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }
  void expect_word(std::string_view w) {
    if (!peek_word(w)) {
      throw ParseError("expected " + std::string(w) + " but found " + describe(peek()), peek().line, peek().column);
    }
    next();
  }
  const Token& expect_ident(const std::string& what) {
    const Token& t = expect(Tok::Ident, what);
    if (is_reserved(t.text)) throw ParseError("expected " + what + " but found keyword '" + t.text + "'", t.line, t.column);
    return t;
  }

  VarId variable(const Token& t) const {
    if (auto v = vocab_->find(t.text)) return *v;
    throw UndeclaredIdentifierError(t.text, t.line, t.column);
  }
  AgentId agent(const Token& t) const {
    auto it = std::find(agents_->begin(), agents_->end(), t.text);
    if (it == agents_->end()) throw UndeclaredIdentifierError(t.text, t.line, t.column);
    return AgentId{static_cast<std::uint32_t>(it - agents_->begin())};
  }

  DelFormula formula() {
    const Token& t = next();
    if (++depth_ > kMaxDepth) throw ParseError("formula nested too deeply", t.line, t.column);
    struct Leave {
      std::size_t& d;
      ~Leave() { --d; }
    } leave{depth_};
    switch (t.kind) {
      case Tok::Ident:
        if (t.text == "Top") return DelFormula::top();
        if (t.text == "Bot") return DelFormula::bot();
        if (t.text == "K" || t.text == "Kw") {
          const AgentId a = agent(expect_ident("agent name"));
          DelFormula body = formula();
          return t.text == "K" ? DelFormula::knows(a, std::move(body)) : DelFormula::knows_whether(a, std::move(body));
        }
        if (is_reserved(t.text)) break;
        return DelFormula::atom(variable(t));
      case Tok::Tilde:
        return !formula();
      case Tok::Announce:
      case Tok::AnnounceWhether: {
        DelFormula announced = formula();
        expect(Tok::RBracket, "']'");
        DelFormula then = formula();
        return t.kind == Tok::Announce ? DelFormula::announce(std::move(announced), std::move(then))
                                       : DelFormula::announce_whether(std::move(announced), std::move(then));
      }
      case Tok::LParen:
        return binary();
      default:
        break;
    }
    throw ParseError("expected a formula but found " + describe(t), t.line, t.column);
  }

  DelFormula binary() {
    std::vector<DelFormula> operands{formula()};
    const Token& op = next();
    if (op.kind != Tok::And && op.kind != Tok::Or && op.kind != Tok::Arrow && op.kind != Tok::Caret) {
      throw ParseError("expected '&', '|', '->' or '^' but found " + describe(op), op.line, op.column);
    }
    operands.push_back(formula());
    while (peek().kind != Tok::RParen) {
      const Token& more = next();
      if (more.kind != op.kind || op.kind == Tok::Arrow) {
        throw ParseError("expected ')' but found " + describe(more), more.line, more.column);
      }
      operands.push_back(formula());
    }
    next();
    switch (op.kind) {
      case Tok::And:
        return DelFormula::conjunction(std::move(operands));
      case Tok::Or:
        return DelFormula::disjunction(std::move(operands));
      case Tok::Caret:
        return DelFormula::exclusive(std::move(operands));
      default:
        return DelFormula::implication(operands[0], operands[1]);
    }
  }

  std::vector<Token> toks_;
  static constexpr std::size_t kMaxDepth = 2000;

  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
  const Vocabulary* vocab_;
  const std::vector<std::string>* agents_;
};

void print(std::string& out, const DelFormula& f, const Vocabulary& vocab, const std::vector<std::string>& agents) {
  using K = DelFormula::Kind;
  auto nary = [&](const char* op, const char* empty) {
    const auto kids = f.children();
    if (kids.empty()) {
      out += empty;
      return;
    }
    if (kids.size() == 1) {
      print(out, kids[0], vocab, agents);
      return;
    }
    out += '(';
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i > 0) out += op;
      print(out, kids[i], vocab, agents);
    }
    out += ')';
  };
  auto agent_name = [&](AgentId a) -> std::string {
    return a.index < agents.size() ? agents[a.index] : "#" + std::to_string(a.index);
  };
  switch (f.kind()) {
    case K::Top:
      out += "Top";
      return;
    case K::Bot:
      out += "Bot";
      return;
    case K::Atom:
      out += vocab.name(f.var());
      return;
    case K::Not:
      out += '~';
      print(out, f.children()[0], vocab, agents);
      return;
    case K::And:
      nary(" & ", "Top");
      return;
    case K::Or:
      nary(" | ", "Bot");
      return;
    case K::Xor:
      nary(" ^ ", "Bot");
      return;
    case K::Implies:
      nary(" -> ", "Top");
      return;
    case K::Knows:
    case K::KnowsWhether:
      out += f.kind() == K::Knows ? "K " : "Kw ";
      out += agent_name(f.agent());
      out += ' ';
      print(out, f.children()[0], vocab, agents);
      return;
    case K::Announce:
    case K::AnnounceWhether:
      out += f.kind() == K::Announce ? "[! " : "[?! ";
      print(out, f.children()[0], vocab, agents);
      out += "] ";
      print(out, f.children()[1], vocab, agents);
      return;
  }
}

}  // namespace

KnowledgeStructure ModelFile::structure(Backend backend) const {
  auto manager = std::make_shared<DdManager>(vocabulary, backend);
  return KnowledgeStructure::from_formula(std::move(manager), law, observed, agents);
}

ModelFile parse_model(std::string_view text) { return Parser(tokenize(text), nullptr, nullptr).model(); }

DelFormula parse_formula(std::string_view text, const Vocabulary& vocab, const std::vector<std::string>& agents) {
  return Parser(tokenize(text), &vocab, &agents).single_formula();
}

std::string print_formula(const DelFormula& f, const Vocabulary& vocab, const std::vector<std::string>& agents) {
  std::string out;
  print(out, f, vocab, agents);
  return out;
}

std::vector<std::string> check_file(const ModelFile& file, Backend backend) {
  const KnowledgeStructure ks = file.structure(backend);
  DdManager& m = ks.manager();
  std::vector<std::string> report;
  for (const Query& q : file.queries) {
    const std::string shown = print_formula(q.formula, file.vocabulary, file.agents);
    switch (q.kind) {
      case Query::Kind::Valid: {
        const NodeRef t = translate(ks, q.formula);
        const bool valid = m.apply(BoolOp::Imp, ks.law(), t) == m.constant(true);
        report.push_back("VALID? " + shown + " : " + (valid ? "true" : "false"));
        break;
      }
      case Query::Kind::Where: {
        std::string line = "WHERE? " + shown + " :";
        const auto states = states_of(update(ks, q.formula));
        if (states.empty()) line += " none";
        for (const State& s : states) line += " " + s.to_string(file.vocabulary);
        report.push_back(std::move(line));
        break;
      }
      case Query::Kind::True: {
        const Scene scene(ks, *q.state);
        report.push_back("TRUE? " + q.state->to_string(file.vocabulary) + " " + shown + " : " +
                         (eval_scene(scene, q.formula) ? "true" : "false"));
        break;
      }
    }
  }
  return report;
}

}  // namespace deldd
