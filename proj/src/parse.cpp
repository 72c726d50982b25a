#include "hw/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace hw {

bool is_skolem_name(const std::string& name) {
  if (name.size() < 3 || name[0] != 's' || name[1] != 'k') return false;
  for (std::size_t i = 2; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

void AritySession::check_predicate(const std::string& name, int arity, int line, int column) {
  auto [it, inserted] = predicates_.emplace(name, arity);
  if (!inserted && it->second != arity)
    throw ArityError("predicate '" + name + "' used with arity " + std::to_string(arity) +
                     " but previously with arity " + std::to_string(it->second) + " (line " +
                     std::to_string(line) + ", column " + std::to_string(column) + ")");
}

void AritySession::check_term_symbol(const std::string& name, int arity, int line, int column) {
  auto [it, inserted] = term_symbols_.emplace(name, arity);
  if (!inserted && it->second != arity)
    throw ArityError("symbol '" + name + "' used with arity " + std::to_string(arity) +
                     " but previously with arity " + std::to_string(it->second) + " (line " +
                     std::to_string(line) + ", column " + std::to_string(column) + ")");
}

namespace {

struct Token {
  enum class Kind { Ident, Var, LParen, RParen, Comma, Semicolon, Dot, Implied, Arrow, Amp, Pipe, Tilde, End };
  Kind kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  Lexer(const std::string& text, int start_line) : text_(text), line_(start_line) {}

  Token next() {
    skip_space();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return {Token::Kind::End, "", line, col};
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word = lex_word();
      if (std::isupper(static_cast<unsigned char>(c))) return {Token::Kind::Var, word, line, col};
      return {Token::Kind::Ident, word, line, col};
    }
    switch (c) {
      case '(': advance(); return {Token::Kind::LParen, "(", line, col};
      case ')': advance(); return {Token::Kind::RParen, ")", line, col};
      case ',': advance(); return {Token::Kind::Comma, ",", line, col};
      case ';': advance(); return {Token::Kind::Semicolon, ";", line, col};
      case '.': advance(); return {Token::Kind::Dot, ".", line, col};
      case '&': advance(); return {Token::Kind::Amp, "&", line, col};
      case '|': advance(); return {Token::Kind::Pipe, "|", line, col};
      case '~': advance(); return {Token::Kind::Tilde, "~", line, col};
      case ':':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
          advance();
          advance();
          return {Token::Kind::Implied, ":-", line, col};
        }
        throw ParseError("unexpected ':'", line, col);
      case '=':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          advance();
          advance();
          return {Token::Kind::Arrow, "=>", line, col};
        }
        throw ParseError("unexpected '='", line, col);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string lex_word() {
    std::string out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        out += c;
        advance();
      } else {
        break;
      }
    }
    return out;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_;
  int col_ = 1;
};

bool is_keyword(const std::string& w) { return w == "all" || w == "exists" || w == "false"; }

class Parser {
 public:
  Parser(const std::string& text, AritySession& session, int start_line = 1)
      : lexer_(text, start_line), session_(session) {
    tok_ = lexer_.next();
  }

  Clause clause() {
    Clause c;
    if (tok_.kind == Token::Kind::Ident && tok_.text == "false") {
      consume();
    } else {
      c.head.push_back(atom());
      while (tok_.kind == Token::Kind::Semicolon) {
        consume();
        c.head.push_back(atom());
      }
    }
    if (tok_.kind == Token::Kind::Implied) {
      consume();
      c.body.push_back(atom());
      while (tok_.kind == Token::Kind::Comma) {
        consume();
        c.body.push_back(atom());
      }
    }
    expect(Token::Kind::Dot, "'.'");
    return c;
  }

  FormulaPtr formula() {
    FormulaPtr f = implication();
    return f;
  }

  bool at_end() const { return tok_.kind == Token::Kind::End; }

  void expect_end() {
    if (tok_.kind != Token::Kind::End)
      throw ParseError("unexpected trailing input '" + tok_.text + "'", tok_.line, tok_.column);
  }

 private:
  void consume() { tok_ = lexer_.next(); }

  void expect(Token::Kind k, const char* what) {
    if (tok_.kind != k)
      throw ParseError(std::string("expected ") + what + ", found '" +
                           (tok_.kind == Token::Kind::End ? "end of input" : tok_.text) + "'",
                       tok_.line, tok_.column);
    consume();
  }

  std::string symbol_name() {
    if (tok_.kind != Token::Kind::Ident)
      throw ParseError("expected a symbol, found '" + tok_.text + "'", tok_.line, tok_.column);
    if (is_keyword(tok_.text))
      throw ParseError("reserved word '" + tok_.text + "' cannot be used as a symbol", tok_.line,
                       tok_.column);
    if (is_skolem_name(tok_.text))
      throw ParseError("'" + tok_.text + "' is in the reserved Skolem namespace", tok_.line,
                       tok_.column);
    std::string name = tok_.text;
    consume();
    return name;
  }

  Term term() {
    if (tok_.kind == Token::Kind::Var) {
      Term t = Term::var(tok_.text);
      consume();
      return t;
    }
    int line = tok_.line, col = tok_.column;
    std::string name = symbol_name();
    if (tok_.kind == Token::Kind::LParen) {
      consume();
      std::vector<Term> args;
      args.push_back(term());
      while (tok_.kind == Token::Kind::Comma) {
        consume();
        args.push_back(term());
      }
      expect(Token::Kind::RParen, "')'");
      session_.check_term_symbol(name, static_cast<int>(args.size()), line, col);
      return Term::func(name, std::move(args));
    }
    session_.check_term_symbol(name, 0, line, col);
    return Term::constant(name);
  }

  Atom atom() {
    int line = tok_.line, col = tok_.column;
    Atom a;
    a.predicate = symbol_name();
    if (tok_.kind == Token::Kind::LParen) {
      consume();
      a.args.push_back(term());
      while (tok_.kind == Token::Kind::Comma) {
        consume();
        a.args.push_back(term());
      }
      expect(Token::Kind::RParen, "')'");
    }
    session_.check_predicate(a.predicate, static_cast<int>(a.args.size()), line, col);
    return a;
  }

  FormulaPtr implication() {
    FormulaPtr lhs = disjunction();
    if (tok_.kind == Token::Kind::Arrow) {
      consume();
      return Formula::make_implies(std::move(lhs), implication());
    }
    return lhs;
  }

  FormulaPtr disjunction() {
    std::vector<FormulaPtr> parts{conjunction()};
    while (tok_.kind == Token::Kind::Pipe) {
      consume();
      parts.push_back(conjunction());
    }
    return Formula::make_or(std::move(parts));
  }

  FormulaPtr conjunction() {
    std::vector<FormulaPtr> parts{negation()};
    while (tok_.kind == Token::Kind::Amp) {
      consume();
      parts.push_back(negation());
    }
    return Formula::make_and(std::move(parts));
  }

  FormulaPtr negation() {
    if (tok_.kind == Token::Kind::Tilde) {
      consume();
      return Formula::make_not(negation());
    }
    return primary();
  }

  FormulaPtr quantified() {
    Formula::Kind kind = tok_.text == "all" ? Formula::Kind::Forall : Formula::Kind::Exists;
    consume();
    std::vector<std::string> vars;
    if (tok_.kind != Token::Kind::Var)
      throw ParseError("expected a variable after quantifier", tok_.line, tok_.column);
    vars.push_back(tok_.text);
    consume();
    while (tok_.kind == Token::Kind::Comma) {
      consume();
      if (tok_.kind != Token::Kind::Var)
        throw ParseError("expected a variable in quantifier list", tok_.line, tok_.column);
      vars.push_back(tok_.text);
      consume();
    }
    FormulaPtr body;
    if (tok_.kind == Token::Kind::LParen) {
      consume();
      body = formula();
      expect(Token::Kind::RParen, "')'");
    } else if (tok_.kind == Token::Kind::Ident && is_keyword(tok_.text) && tok_.text != "false") {
      body = quantified();
    } else {
      throw ParseError("expected '(' after quantifier variables", tok_.line, tok_.column);
    }
    return Formula::quantify(kind, std::move(vars), std::move(body));
  }

  FormulaPtr primary() {
    if (tok_.kind == Token::Kind::LParen) {
      consume();
      FormulaPtr f = formula();
      expect(Token::Kind::RParen, "')'");
      return f;
    }
    if (tok_.kind == Token::Kind::Ident && (tok_.text == "all" || tok_.text == "exists"))
      return quantified();
    return Formula::make_atom(atom());
  }

  Lexer lexer_;
  AritySession& session_;
  Token tok_;
};

}  // namespace

Clause parse_clause(const std::string& text, AritySession& session) {
  Parser p(text, session);
  Clause c = p.clause();
  p.expect_end();
  return c;
}

Clause parse_clause(const std::string& text) {
  AritySession session;
  return parse_clause(text, session);
}

FormulaPtr parse_formula(const std::string& text, AritySession& session) {
  Parser p(text, session);
  FormulaPtr f = p.formula();
  p.expect_end();
  std::set<std::string> free;
  collect_free_vars(*f, free);
  if (!free.empty()) {
    std::string names;
    for (const auto& v : free) names += (names.empty() ? "" : ", ") + v;
    throw FragmentError("formula is not closed; free variables: " + names);
  }
  return f;
}

FormulaPtr parse_formula(const std::string& text) {
  AritySession session;
  return parse_formula(text, session);
}

std::vector<Clause> parse_clauses(const std::string& text, AritySession& session) {
  std::vector<Clause> out;
  Parser p(text, session);
  while (!p.at_end()) {
    Clause c = p.clause();
    c.id = static_cast<int>(out.size());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Clause> parse_clauses(const std::string& text) {
  AritySession session;
  return parse_clauses(text, session);
}

std::vector<Clause> parse_clause_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open clause file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_clauses(buf.str());
}

FormulaPtr parse_formula_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open formula file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_formula(buf.str());
}

}  // namespace hw
