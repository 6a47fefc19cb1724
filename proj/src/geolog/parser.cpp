#include "sitelab/geolog/parser.hpp"

#include <cctype>
#include <set>

#include "sitelab/error.hpp"

namespace sitelab::geolog {

namespace {

struct Token {
  enum class Kind { Ident, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  SourceSpan span;
};

const std::set<std::string, std::less<>> kKeywords = {
    "theory", "sort", "fun", "rel", "axiom", "top", "bot", "and", "or", "exists", "not", "implies", "forall"};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    Token tok;
    tok.span = {line, col};
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      tok.kind = Token::Kind::Ident;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (text.substr(i, 2) == "|-" || text.substr(i, 2) == "->") {
      tok.kind = Token::Kind::Punct;
      tok.text = std::string(text.substr(i, 2));
      advance(2);
    } else if (std::string_view("()[],:.=").find(ch) != std::string_view::npos) {
      tok.kind = Token::Kind::Punct;
      tok.text = std::string(1, ch);
      advance(1);
    } else {
      throw Error("SyntaxError", "unexpected character '" + std::string(1, ch) + "' at line " + std::to_string(line) +
                                     ", column " + std::to_string(col));
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.span = {line, col};
  out.push_back(end);
  return out;
}

std::string at(const SourceSpan& s) {
  return " at line " + std::to_string(s.line) + ", column " + std::to_string(s.column);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Theory run() {
    Theory t;
    while (!at_end()) {
      const Token& tok = peek();
      if (is_word("theory")) {
        next();
        t.name = identifier("theory name");
      } else if (is_word("sort")) {
        next();
        t.signature.sorts.push_back(identifier("sort name"));
      } else if (is_word("fun")) {
        next();
        FunctionSymbol fn;
        fn.name = identifier("function name");
        expect(":");
        while (peek().kind == Token::Kind::Ident && !is_keyword(peek().text)) fn.args.push_back(next().text);
        expect("->");
        fn.result = identifier("result sort");
        t.signature.functions.push_back(std::move(fn));
      } else if (is_word("rel")) {
        next();
        RelationSymbol r;
        r.name = identifier("relation name");
        expect(":");
        while (peek().kind == Token::Kind::Ident && !is_keyword(peek().text)) r.args.push_back(next().text);
        t.signature.relations.push_back(std::move(r));
      } else if (is_word("axiom")) {
        sig_ = &t.signature;
        t.axioms.push_back(axiom());
      } else {
        throw Error("SyntaxError", "expected a declaration, found '" + tok.text + "'" + at(tok.span));
      }
    }
    t.fragment = detect_fragment(t);
    check_theory(t);
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature* sig_ = nullptr;
  Context scope_;

  bool at_end() const { return toks_[pos_].kind == Token::Kind::End; }
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (!at_end()) ++pos_;
    return t;
  }
  bool is_word(std::string_view w) const { return peek().kind == Token::Kind::Ident && peek().text == w; }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::Punct && peek(ahead).text == p;
  }
  static bool is_keyword(const std::string& s) { return kKeywords.count(s) > 0; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw Error("SyntaxError", "expected " + expected + ", found " +
                                   (t.kind == Token::Kind::End ? std::string("end of input") : "'" + t.text + "'") +
                                   at(t.span));
  }
  void expect(std::string_view p) {
    if (!is_punct(p)) fail("'" + std::string(p) + "'");
    next();
  }
  std::string identifier(const std::string& what) {
    if (peek().kind != Token::Kind::Ident || is_keyword(peek().text)) fail(what);
    return next().text;
  }

  Sequent axiom() {
    Sequent s;
    s.span = next().span;
    if (is_punct("[")) {
      next();
      s.label = identifier("axiom label");
      expect("]");
    }
    expect("(");
    if (!is_punct(")")) {
      while (true) {
        std::string v = identifier("variable");
        expect(":");
        std::string sort = identifier("sort");
        s.context.emplace_back(std::move(v), std::move(sort));
        if (is_punct(")")) break;
        expect(",");
      }
    }
    expect(")");
    scope_ = s.context;
    if (is_punct("|-")) {
      s.premise = Formula::top();
      s.premise.span = peek().span;
    } else {
      s.premise = formula();
    }
    expect("|-");
    s.conclusion = formula();
    return s;
  }

  std::vector<Formula> formula_list() {
    expect("[");
    std::vector<Formula> out;
    if (!is_punct("]")) {
      while (true) {
        out.push_back(formula());
        if (is_punct("]")) break;
        expect(",");
      }
    }
    expect("]");
    return out;
  }

  Formula formula() {
    const SourceSpan span = peek().span;
    Formula f;
    if (is_punct("(")) {
      next();
      f = formula();
      expect(")");
      return f;
    }
    if (is_word("top")) {
      next();
      f = Formula::top();
    } else if (is_word("bot")) {
      next();
      f = Formula::bot();
    } else if (is_word("and") || is_word("or")) {
      const bool conj = next().text == "and";
      auto parts = formula_list();
      f = conj ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    } else if (is_word("implies")) {
      next();
      auto parts = formula_list();
      if (parts.size() != 2) throw Error("SyntaxError", "implies takes exactly two formulas" + at(span));
      f = Formula::implies(std::move(parts[0]), std::move(parts[1]));
    } else if (is_word("not")) {
      next();
      f = Formula::negation(formula());
    } else if (is_word("exists") || is_word("forall")) {
      const bool ex = next().text == "exists";
      std::string v = identifier("bound variable");
      expect(":");
      std::string sort = identifier("sort");
      expect(".");
      scope_.emplace_back(v, sort);
      Formula body = formula();
      scope_.pop_back();
      f = ex ? Formula::exists(std::move(v), std::move(sort), std::move(body))
             : Formula::forall(std::move(v), std::move(sort), std::move(body));
    } else if (peek().kind == Token::Kind::Ident && !is_keyword(peek().text) && sig_->find_relation(peek().text) &&
               !is_bound(peek().text)) {
      std::string r = next().text;
      std::vector<Term> args;
      if (is_punct("(")) args = term_list();
      f = Formula::rel(std::move(r), std::move(args));
    } else {
      Term a = term();
      expect("=");
      Term b = term();
      f = Formula::eq(std::move(a), std::move(b));
    }
    f.span = span;
    return f;
  }

  bool is_bound(const std::string& v) const {
    for (const auto& [name, sort] : scope_) {
      if (name == v) return true;
    }
    return false;
  }

  std::vector<Term> term_list() {
    expect("(");
    std::vector<Term> out;
    if (!is_punct(")")) {
      while (true) {
        out.push_back(term());
        if (is_punct(")")) break;
        expect(",");
      }
    }
    expect(")");
    return out;
  }

  Term term() {
    const SourceSpan span = peek().span;
    std::string name = identifier("term");
    Term t;
    if (is_punct("(")) {
      if (!sig_->find_function(name)) {
        throw Error("UnknownSymbol", "'" + name + "' is not a declared function or relation" + at(span));
      }
      t = Term::app(name, term_list());
    } else if (is_bound(name)) {
      t = Term::var(name);
    } else if (sig_->find_function(name)) {
      t = Term::app(name, {});
    } else {
      throw Error("UnknownSymbol", "'" + name + "' is neither a variable in scope nor a constant" + at(span));
    }
    t.span = span;
    return t;
  }
};

}  // namespace

Theory parse_theory(std::string_view text) { return Parser(tokenize(text)).run(); }

}  // namespace sitelab::geolog
