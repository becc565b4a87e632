#include "daelix/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "daelix/errors.hpp"

namespace daelix {

namespace {

enum class Tok {
  Ident, Dot, Comma, Slash, LParen, RParen, LBrace, RBrace, Arrow,
  Tilde, Amp, Pipe, Implies, Iff, Equals, Colon, LBracket, RBracket, End
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      tok_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_' || src_[pos_] == '\'')) {
        bump();
      }
      tok_.kind = Tok::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    auto two = src_.substr(pos_, 2);
    auto three = src_.substr(pos_, 3);
    if (three == "<=>") { take(3, Tok::Iff); return; }
    if (two == "=>") { take(2, Tok::Implies); return; }
    if (two == "->") { take(2, Tok::Arrow); return; }
    switch (c) {
      case '.': take(1, Tok::Dot); return;
      case ',': take(1, Tok::Comma); return;
      case '/': take(1, Tok::Slash); return;
      case '(': take(1, Tok::LParen); return;
      case ')': take(1, Tok::RParen); return;
      case '{': take(1, Tok::LBrace); return;
      case '}': take(1, Tok::RBrace); return;
      case '~': take(1, Tok::Tilde); return;
      case '&': take(1, Tok::Amp); return;
      case '|': take(1, Tok::Pipe); return;
      case '=': take(1, Tok::Equals); return;
      case ':': take(1, Tok::Colon); return;
      case '[': take(1, Tok::LBracket); return;
      case ']': take(1, Tok::RBracket); return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         line_, col_);
    }
  }

  void take(int n, Tok k) {
    tok_.kind = k;
    tok_.text = src_.substr(pos_, n);
    for (int i = 0; i < n; ++i) bump();
  }

  void skip_ws() {
    for (;;) {
      while (pos_ < src_.size() &&
             std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        bump();
      }
      if (pos_ < src_.size() && src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
        continue;
      }
      break;
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_{};
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  DistributedTheory parse_file() {
    DistributedTheory t;
    declare_builtins(t.vocab);
    bool agents_seen = false;
    std::vector<std::vector<FormulaPtr>> blocks;
    std::vector<bool> block_seen;
    while (lex_.peek().kind != Tok::End) {
      Token head = expect_ident("directive");
      if (head.text == "agents") {
        if (agents_seen)
          throw ParseError("agents declared twice", head.line, head.col);
        agents_seen = true;
        parse_agents(t);
        block_seen.assign(t.agents.size(), false);
        blocks.assign(t.agents.size(), {});
      } else if (head.text == "domain") {
        require_agents(agents_seen, head);
        parse_domain(t);
      } else if (head.text == "pred") {
        require_agents(agents_seen, head);
        parse_pred(t);
      } else if (head.text == "func") {
        require_agents(agents_seen, head);
        parse_func(t);
      } else if (head.text == "theory") {
        require_agents(agents_seen, head);
        parse_theory_block(t, blocks, block_seen);
      } else {
        throw ParseError("unknown directive '" + head.text + "'", head.line,
                         head.col);
      }
    }
    if (!agents_seen) throw ParseError("missing agents declaration", 1, 1);
    t.sentences = std::move(blocks);
    finish(t);
    return t;
  }

  FormulaPtr parse_single_sentence(const DistributedTheory& ctx) {
    FormulaPtr f = parse_formula(ctx.vocab, ctx.objective);
    if (lex_.peek().kind == Tok::Dot) lex_.next();
    if (lex_.peek().kind != Tok::End) {
      Token t = lex_.peek();
      throw ParseError("trailing input after sentence", t.line, t.col);
    }
    FormulaPtr d = desugar(f);
    if (!free_variables(d).empty())
      throw ValidationError("free variable in sentence: " + to_string(f));
    return d;
  }

 private:
  static void declare_builtins(Vocabulary& v) {
    v.declare_pred(builtin::kTrue, 0, true);
    v.declare_pred(builtin::kFalse, 0, true);
    v.declare_pred(builtin::kEquals, 2, true);
    v.declare_pred(builtin::kAgentPred, 1, true);
  }

  void require_agents(bool seen, const Token& at) {
    if (!seen)
      throw ParseError("agents must be declared before '" + at.text + "'",
                       at.line, at.col);
  }

  Token expect(Tok k, const std::string& what) {
    Token t = lex_.next();
    if (t.kind != k)
      throw ParseError("expected " + what + ", found '" + t.text + "'",
                       t.line, t.col);
    return t;
  }

  Token expect_ident(const std::string& what) { return expect(Tok::Ident, what); }

  void parse_agents(DistributedTheory& t) {
    for (;;) {
      Token a = expect_ident("agent name");
      if (t.objective.has_element(a.text))
        throw ParseError("agent '" + a.text + "' declared twice", a.line, a.col);
      t.agents.push_back(a.text);
      t.objective.add_element(a.text);
      if (lex_.peek().kind == Tok::Comma) {
        lex_.next();
        continue;
      }
      break;
    }
    expect(Tok::Dot, "'.'");
    if (t.agents.empty()) throw ValidationError("empty agent set");
    for (const auto& a : t.agents)
      t.objective.add_pred_tuple(builtin::kAgentPred, {t.objective.element(a)});
  }

  void parse_domain(DistributedTheory& t) {
    expect(Tok::LBrace, "'{'");
    if (lex_.peek().kind != Tok::RBrace) {
      for (;;) {
        Token e = expect_ident("domain element");
        t.objective.add_element(e.text);
        if (lex_.peek().kind == Tok::Comma) {
          lex_.next();
          continue;
        }
        break;
      }
    }
    expect(Tok::RBrace, "'}'");
    expect(Tok::Dot, "'.'");
  }

  std::vector<int> parse_tuple(const ObjectiveStructure& o, int arity) {
    std::vector<int> tuple;
    expect(Tok::LParen, "'('");
    if (lex_.peek().kind != Tok::RParen) {
      for (;;) {
        Token e = expect_ident("domain element");
        if (!o.has_element(e.text))
          throw ParseError("unknown domain element '" + e.text + "'", e.line,
                           e.col);
        tuple.push_back(o.element(e.text));
        if (lex_.peek().kind == Tok::Comma) {
          lex_.next();
          continue;
        }
        break;
      }
    }
    Token close = expect(Tok::RParen, "')'");
    if (static_cast<int>(tuple.size()) != arity)
      throw ParseError("tuple arity mismatch", close.line, close.col);
    return tuple;
  }

  void parse_pred(DistributedTheory& t) {
    Token name = expect_ident("predicate name");
    expect(Tok::Slash, "'/'");
    Token ar = expect_ident("arity");
    int arity = parse_nat(ar);
    bool objective = false;
    if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "objective") {
      lex_.next();
      objective = true;
    }
    if (t.vocab.declared(name.text))
      throw ParseError("symbol '" + name.text + "' declared twice", name.line,
                       name.col);
    t.vocab.declare_pred(name.text, arity, objective);
    if (objective) {
      std::set<std::vector<int>> ext;
      if (lex_.peek().kind == Tok::Equals) {
        lex_.next();
        expect(Tok::LBrace, "'{'");
        while (lex_.peek().kind == Tok::LParen)
          ext.insert(parse_tuple(t.objective, arity));
        expect(Tok::RBrace, "'}'");
      }
      t.objective.set_pred(name.text, std::move(ext));
    }
    expect(Tok::Dot, "'.'");
  }

  void parse_func(DistributedTheory& t) {
    Token name = expect_ident("function name");
    expect(Tok::Slash, "'/'");
    Token ar = expect_ident("arity");
    int arity = parse_nat(ar);
    if (!(lex_.peek().kind == Tok::Ident && lex_.peek().text == "objective"))
      throw ParseError(
          "subjective function symbols are not supported; declare '" +
              name.text + "' objective",
          name.line, name.col);
    lex_.next();
    if (t.vocab.declared(name.text))
      throw ParseError("symbol '" + name.text + "' declared twice", name.line,
                       name.col);
    t.vocab.declare_func(name.text, arity);
    expect(Tok::Equals, "'='");
    expect(Tok::LBrace, "'{'");
    while (lex_.peek().kind == Tok::LParen) {
      auto tuple = parse_tuple(t.objective, arity);
      expect(Tok::Arrow, "'->'");
      Token val = expect_ident("domain element");
      if (!t.objective.has_element(val.text))
        throw ParseError("unknown domain element '" + val.text + "'", val.line,
                         val.col);
      t.objective.set_func_entry(name.text, std::move(tuple),
                                 t.objective.element(val.text));
    }
    expect(Tok::RBrace, "'}'");
    expect(Tok::Dot, "'.'");
  }

  void parse_theory_block(DistributedTheory& t,
                          std::vector<std::vector<FormulaPtr>>& blocks,
                          std::vector<bool>& block_seen) {
    Token agent = expect_ident("agent name");
    int idx = t.agent_index(agent.text);
    if (idx < 0)
      throw ParseError("'" + agent.text + "' is not an agent", agent.line,
                       agent.col);
    if (block_seen[idx])
      throw ParseError("theory for '" + agent.text + "' declared twice",
                       agent.line, agent.col);
    block_seen[idx] = true;
    expect(Tok::LBrace, "'{'");
    while (lex_.peek().kind != Tok::RBrace) {
      FormulaPtr f = parse_formula(t.vocab, t.objective);
      expect(Tok::Dot, "'.'");
      FormulaPtr d = desugar(f);
      if (!free_variables(d).empty())
        throw ValidationError("free variable in sentence: " + to_string(f));
      blocks[idx].push_back(d);
    }
    expect(Tok::RBrace, "'}'");
  }

  int parse_nat(const Token& t) {
    if (t.text.empty()) throw ParseError("expected arity", t.line, t.col);
    int n = 0;
    for (char c : t.text) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("expected arity, found '" + t.text + "'", t.line,
                         t.col);
      n = n * 10 + (c - '0');
    }
    return n;
  }

  // ---- formulas ----

  FormulaPtr parse_formula(const Vocabulary& v, const ObjectiveStructure& o) {
    return parse_iff(v, o);
  }

  FormulaPtr parse_iff(const Vocabulary& v, const ObjectiveStructure& o) {
    FormulaPtr f = parse_implies(v, o);
    while (lex_.peek().kind == Tok::Iff) {
      lex_.next();
      f = Formula::iff(f, parse_implies(v, o));
    }
    return f;
  }

  FormulaPtr parse_implies(const Vocabulary& v, const ObjectiveStructure& o) {
    FormulaPtr f = parse_or(v, o);
    if (lex_.peek().kind == Tok::Implies) {
      lex_.next();
      return Formula::implies(f, parse_implies(v, o));  // right-assoc
    }
    return f;
  }

  FormulaPtr parse_or(const Vocabulary& v, const ObjectiveStructure& o) {
    FormulaPtr f = parse_and(v, o);
    while (lex_.peek().kind == Tok::Pipe) {
      lex_.next();
      f = Formula::disj(f, parse_and(v, o));
    }
    return f;
  }

  FormulaPtr parse_and(const Vocabulary& v, const ObjectiveStructure& o) {
    FormulaPtr f = parse_unary(v, o);
    while (lex_.peek().kind == Tok::Amp) {
      lex_.next();
      f = Formula::conj(f, parse_unary(v, o));
    }
    return f;
  }

  FormulaPtr parse_unary(const Vocabulary& v, const ObjectiveStructure& o) {
    Token t = lex_.peek();
    if (t.kind == Tok::Tilde) {
      lex_.next();
      return Formula::negation(parse_unary(v, o));
    }
    if (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists")) {
      lex_.next();
      Token var = expect_ident("variable");
      expect(Tok::Colon, "':'");
      bound_.push_back(var.text);
      FormulaPtr body = parse_unary(v, o);
      bound_.pop_back();
      return t.text == "forall" ? Formula::forall(var.text, body)
                                : Formula::exists(var.text, body);
    }
    if (t.kind == Tok::Ident && t.text == "K") {
      lex_.next();
      if (lex_.peek().kind == Tok::LBracket) {
        lex_.next();
        Term index = parse_term(v, o);
        check_objective_index(index, v, t);
        expect(Tok::RBracket, "']'");
        return Formula::knows(index, parse_unary(v, o));
      }
      // unindexed K: the single-knower (AEL) modality
      return Formula::knows_unindexed(parse_unary(v, o));
    }
    return parse_primary(v, o);
  }

  FormulaPtr parse_primary(const Vocabulary& v, const ObjectiveStructure& o) {
    Token t = lex_.peek();
    if (t.kind == Tok::LParen) {
      lex_.next();
      FormulaPtr f = parse_formula(v, o);
      expect(Tok::RParen, "')'");
      if (lex_.peek().kind == Tok::Equals) {
        Token e = lex_.peek();
        throw ParseError("equality operands must be terms", e.line, e.col);
      }
      return f;
    }
    if (t.kind != Tok::Ident)
      throw ParseError("expected formula, found '" + t.text + "'", t.line,
                       t.col);
    if (t.text == "true" || t.text == "false") {
      lex_.next();
      if (lex_.peek().kind == Tok::Equals)
        throw ParseError("equality operands must be terms", t.line, t.col);
      return Formula::truth(t.text == "true");
    }
    // A term followed by '=' is an equality atom; otherwise the head must
    // name a predicate.
    Term first = parse_term(v, o);
    if (lex_.peek().kind == Tok::Equals) {
      if (!first.is_variable && v.find_pred(first.head))
        throw ParseError("equality operands must be terms", t.line, t.col);
      lex_.next();
      Term second = parse_term(v, o, false);
      return Formula::equals(first, second);
    }
    if (first.is_variable)
      throw ParseError("variable '" + first.head + "' used as a formula",
                       t.line, t.col);
    const PredSig* p = v.find_pred(first.head);
    if (!p)
      throw ParseError("undeclared predicate '" + first.head + "'", t.line,
                       t.col);
    if (static_cast<int>(first.args.size()) != p->arity)
      throw ParseError("arity mismatch for '" + first.head + "': expected " +
                           std::to_string(p->arity) + ", got " +
                           std::to_string(first.args.size()),
                       t.line, t.col);
    return Formula::atom(first.head, first.args);
  }

  Term parse_term(const Vocabulary& v, const ObjectiveStructure& o,
                  bool pred_head_ok = true) {
    Token t = expect_ident("term");
    if (is_bound(t.text)) {
      if (lex_.peek().kind == Tok::LParen)
        throw ParseError("variable '" + t.text + "' applied to arguments",
                         t.line, t.col);
      return Term::var(t.text);
    }
    std::vector<Term> args;
    if (lex_.peek().kind == Tok::LParen) {
      lex_.next();
      if (lex_.peek().kind != Tok::RParen) {
        for (;;) {
          args.push_back(parse_term(v, o, false));
          if (lex_.peek().kind == Tok::Comma) {
            lex_.next();
            continue;
          }
          break;
        }
      }
      expect(Tok::RParen, "')'");
    }
    const FuncSig* fn = v.find_func(t.text);
    if (fn) {
      if (static_cast<int>(args.size()) != fn->arity)
        throw ParseError("arity mismatch for '" + t.text + "': expected " +
                             std::to_string(fn->arity) + ", got " +
                             std::to_string(args.size()),
                         t.line, t.col);
      return Term::app(t.text, std::move(args));
    }
    if (args.empty() && o.has_element(t.text)) return Term::app(t.text);
    // The head may name a predicate only when the caller is prepared to
    // reinterpret the whole term as an atom (parse_primary does).
    if (pred_head_ok && v.find_pred(t.text))
      return Term::app(t.text, std::move(args));
    throw ParseError("undeclared symbol '" + t.text + "'", t.line, t.col);
  }

  // D2: modal index terms must be objective (no subjective symbols; those
  // could only enter through predicates-as-terms which parse_term rejects,
  // so it suffices to verify every head is a function or domain element).
  void check_objective_index(const Term& t, const Vocabulary& v,
                             const Token& at) {
    if (t.is_variable) return;
    if (v.find_pred(t.head))
      throw ParseError("modal index mentions non-objective symbol '" +
                           t.head + "'",
                       at.line, at.col);
    for (const auto& a : t.args) check_objective_index(a, v, at);
  }

  bool is_bound(const std::string& name) const {
    for (const auto& b : bound_)
      if (b == name) return true;
    return false;
  }

  void finish(DistributedTheory& t) {
    // Predicates used in sentences were arity-checked during parsing; the
    // remaining invariants live in DistributedTheory::validate.
    t.validate();
  }

  Lexer lex_;
  std::vector<std::string> bound_;
  const DistributedTheory* ctx_ = nullptr;
};

}  // namespace

DistributedTheory parse_theory(const std::string& source) {
  Parser p(source);
  return p.parse_file();
}

FormulaPtr parse_sentence(const std::string& source,
                          const DistributedTheory& context) {
  Parser p(source);
  return p.parse_single_sentence(context);
}

}  // namespace daelix
