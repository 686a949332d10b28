#include "tst/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

namespace tst {

namespace {

enum class Tok {
  end, one, bang, query, oplus, plus, dot, lparen, rparen,
  lbrace, rbrace, lbracket, rbracket, comma, minus, rec, truth,
  and_op, lt, le, eq, ge, gt, nat, ident, uident,
};

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(cur_.line, cur_.col, msg);
  }

 private:
  void advance() {
    skip_space();
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= text_.size()) {
      cur_.kind = Tok::end;
      cur_.text = "<end>";
      return;
    }
    char c = text_[pos_];
    if (c == '(') {
      if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '+' &&
          text_[pos_ + 2] == ')') {
        eat(3, Tok::oplus, "(+)");
        return;
      }
      eat(1, Tok::lparen, "(");
      return;
    }
    switch (c) {
      case ')': eat(1, Tok::rparen, ")"); return;
      case '{': eat(1, Tok::lbrace, "{"); return;
      case '}': eat(1, Tok::rbrace, "}"); return;
      case '[': eat(1, Tok::lbracket, "["); return;
      case ']': eat(1, Tok::rbracket, "]"); return;
      case ',': eat(1, Tok::comma, ","); return;
      case '.': eat(1, Tok::dot, "."); return;
      case '+': eat(1, Tok::plus, "+"); return;
      case '!': eat(1, Tok::bang, "!"); return;
      case '?': eat(1, Tok::query, "?"); return;
      case '-': eat(1, Tok::minus, "-"); return;
      case '&':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '&') {
          eat(2, Tok::and_op, "&&");
          return;
        }
        throw ParseError(line_, col_, "stray '&'");
      case '<':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          eat(2, Tok::le, "<=");
        } else {
          eat(1, Tok::lt, "<");
        }
        return;
      case '>':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          eat(2, Tok::ge, ">=");
        } else {
          eat(1, Tok::gt, ">");
        }
        return;
      case '=': eat(1, Tok::eq, "="); return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        step();
      }
      cur_.kind = text_.substr(start, pos_ - start) == "1" ? Tok::one : Tok::nat;
      cur_.text = text_.substr(start, pos_ - start);
      cur_.value = std::stoll(cur_.text);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        step();
      }
      cur_.text = text_.substr(start, pos_ - start);
      if (cur_.text == "rec") {
        cur_.kind = Tok::rec;
      } else if (cur_.text == "true") {
        cur_.kind = Tok::truth;
      } else if (std::isupper(static_cast<unsigned char>(cur_.text[0]))) {
        cur_.kind = Tok::uident;
      } else {
        cur_.kind = Tok::ident;
      }
      return;
    }
    throw ParseError(line_, col_, std::string("unexpected character '") + c +
                                      "'");
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') step();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        step();
      } else {
        break;
      }
    }
  }

  void eat(std::size_t n, Tok kind, const char* text) {
    cur_.kind = kind;
    cur_.text = text;
    for (std::size_t i = 0; i < n; ++i) step();
  }

  void step() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token cur_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  TstPtr parse_term_eof() {
    TstPtr t = parse_term();
    expect(Tok::end, "end of input");
    check_valid(t);
    return t;
  }

  GuardPtr parse_guard_eof() {
    GuardPtr g = parse_gexpr();
    expect(Tok::end, "end of input");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { lex_.fail(msg); }

  Token expect(Tok kind, const std::string& what) {
    if (lex_.peek().kind != kind) {
      fail("expected " + what + ", found '" + lex_.peek().text + "'");
    }
    return lex_.take();
  }

  void check_valid(const TstPtr& t) {
    auto errors = validate(t);
    if (!errors.empty()) {
      throw ParseError(1, 1, errors.front());
    }
  }

  // term := prefix (('(+)' prefix)* | ('+' prefix)*)
  TstPtr parse_term() {
    Token first = lex_.peek();
    std::optional<Polarity> pol;
    std::vector<Branch> branches;
    TstPtr head = parse_prefix(&pol, &branches);
    Tok sep = lex_.peek().kind;
    if (sep != Tok::oplus && sep != Tok::plus) return head;
    if (!pol) {
      throw ParseError(first.line, first.col,
                       "choice branches must be labelled sends or receives");
    }
    Polarity want = sep == Tok::oplus ? Polarity::output : Polarity::input;
    if (*pol != want) {
      fail(sep == Tok::oplus ? "'(+)' joins output branches only"
                             : "'+' joins input branches only");
    }
    while (lex_.peek().kind == sep) {
      lex_.take();
      Token at = lex_.peek();
      std::optional<Polarity> bp;
      std::vector<Branch> bs;
      parse_prefix(&bp, &bs);
      if (!bp) {
        throw ParseError(at.line, at.col,
                         "choice branches must be labelled sends or receives");
      }
      if (*bp != want) fail("mixed input/output branches in one choice");
      branches.push_back(std::move(bs.front()));
    }
    Tok other = sep == Tok::oplus ? Tok::plus : Tok::oplus;
    if (lex_.peek().kind == other) fail("mixed '(+)' and '+' in one choice");
    return want == Polarity::output ? t_internal(std::move(branches))
                                    : t_external(std::move(branches));
  }

  // prefix := '1' | branch | 'rec' VAR '.' term | VAR | '(' term ')'
  // When the prefix is a labelled branch, reports it through out-params so
  // parse_term can assemble multi-branch choices.
  TstPtr parse_prefix(std::optional<Polarity>* pol, std::vector<Branch>* bs) {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::one:
        lex_.take();
        return t_success();
      case Tok::uident: {
        Token v = lex_.take();
        return t_var(v.text);
      }
      case Tok::rec: {
        lex_.take();
        Token v = expect(Tok::uident, "recursion variable");
        expect(Tok::dot, "'.'");
        TstPtr body = parse_term();
        return t_rec(v.text, std::move(body));
      }
      case Tok::lparen: {
        lex_.take();
        TstPtr inner = parse_term();
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::bang:
      case Tok::query: {
        Polarity p = t.kind == Tok::bang ? Polarity::output : Polarity::input;
        lex_.take();
        Branch b = parse_branch_tail();
        *pol = p;
        bs->push_back(b);
        std::vector<Branch> single{std::move(b)};
        return p == Polarity::output ? t_internal(std::move(single))
                                     : t_external(std::move(single));
      }
      default:
        fail("expected a term");
    }
  }

  // after '!'/'?': ACTION ('{' gexpr '}')? ('[' clock,* ']')? ('.' prefix)?
  Branch parse_branch_tail() {
    Token action = expect(Tok::ident, "action name");
    Branch b;
    b.action = action.text;
    b.guard = g_true();
    if (lex_.peek().kind == Tok::lbrace) {
      lex_.take();
      b.guard = parse_gexpr();
      expect(Tok::rbrace, "'}'");
    }
    if (lex_.peek().kind == Tok::lbracket) {
      lex_.take();
      while (true) {
        Token clock = expect(Tok::ident, "clock name");
        b.resets.insert(clock.text);
        if (lex_.peek().kind != Tok::comma) break;
        lex_.take();
      }
      expect(Tok::rbracket, "']'");
    }
    if (lex_.peek().kind == Tok::dot) {
      lex_.take();
      std::optional<Polarity> pol;
      std::vector<Branch> bs;
      b.cont = parse_prefix(&pol, &bs);
    } else {
      b.cont = t_success();
    }
    return b;
  }

  // gexpr := gunary ('&&' gunary)*
  GuardPtr parse_gexpr() {
    GuardPtr g = parse_gunary();
    while (lex_.peek().kind == Tok::and_op) {
      lex_.take();
      g = g_and(std::move(g), parse_gunary());
    }
    return g;
  }

  GuardPtr parse_gunary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::truth:
        lex_.take();
        return g_true();
      case Tok::bang:
        lex_.take();
        return g_not(parse_gunary());
      case Tok::lparen: {
        lex_.take();
        GuardPtr g = parse_gexpr();
        expect(Tok::rparen, "')'");
        return g;
      }
      case Tok::ident: {
        Token a = lex_.take();
        std::string second;
        if (lex_.peek().kind == Tok::minus) {
          lex_.take();
          second = expect(Tok::ident, "clock name").text;
        }
        CmpOp op = parse_cmp();
        Token d = lex_.peek();
        if (d.kind != Tok::nat && d.kind != Tok::one) {
          fail("expected a natural constant");
        }
        lex_.take();
        if (second.empty()) return g_atom(a.text, op, d.value);
        return g_diag(a.text, second, op, d.value);
      }
      default:
        fail("expected a guard");
    }
  }

  CmpOp parse_cmp() {
    switch (lex_.peek().kind) {
      case Tok::lt: lex_.take(); return CmpOp::lt;
      case Tok::le: lex_.take(); return CmpOp::le;
      case Tok::eq: lex_.take(); return CmpOp::eq;
      case Tok::ge: lex_.take(); return CmpOp::ge;
      case Tok::gt: lex_.take(); return CmpOp::gt;
      default: fail("expected a comparison operator");
    }
  }

  Lexer lex_;
};

}  // namespace

TstPtr parse_tst(const std::string& text) {
  return Parser(text).parse_term_eof();
}

GuardPtr parse_guard(const std::string& text) {
  return Parser(text).parse_guard_eof();
}

TstFile parse_tst_file(const std::string& text) {
  TstFile out;
  std::vector<std::string> bare_lines;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = line.substr(0, line.find('#'));
    if (stripped.find_first_not_of(" \t\r") == std::string::npos) continue;
    // NAME = <tst> if the line starts with an identifier followed by '='
    // that is not part of a comparison.
    std::size_t i = stripped.find_first_not_of(" \t");
    std::size_t j = i;
    while (j < stripped.size() &&
           (std::isalnum(static_cast<unsigned char>(stripped[j])) ||
            stripped[j] == '_')) {
      ++j;
    }
    std::size_t k = stripped.find_first_not_of(" \t", j);
    if (j > i && k != std::string::npos && stripped[k] == '=' &&
        (k + 1 >= stripped.size() || stripped[k + 1] != '=')) {
      std::string name = stripped.substr(i, j - i);
      std::string rhs = stripped.substr(k + 1);
      try {
        TstPtr term = parse_tst(rhs);
        out.definitions[name] = term;
        out.main = term;
      } catch (const ParseError& e) {
        throw ParseError(lineno, e.col, std::string(e.what()));
      }
      continue;
    }
    bare_lines.push_back(stripped);
  }
  if (!bare_lines.empty()) {
    if (!out.definitions.empty()) {
      throw ParseError(lineno, 1,
                       "file mixes named definitions with a bare term");
    }
    std::string joined;
    for (const auto& l : bare_lines) joined += l + "\n";
    out.main = parse_tst(joined);
  }
  if (!out.main) throw ParseError(lineno, 1, "no term in file");
  return out;
}

namespace {

bool needs_parens_as_cont(const TstPtr& t) {
  if (t->kind == Tst::Kind::rec) return true;
  return (t->kind == Tst::Kind::internal_choice ||
          t->kind == Tst::Kind::external_choice) &&
         t->branches.size() > 1;
}

void render(const TstPtr& t, std::string& out) {
  switch (t->kind) {
    case Tst::Kind::success:
      out += "1";
      return;
    case Tst::Kind::var:
      out += t->var;
      return;
    case Tst::Kind::rec:
      out += "rec " + t->var + " . ";
      render(t->body, out);
      return;
    case Tst::Kind::internal_choice:
    case Tst::Kind::external_choice: {
      const bool internal = t->kind == Tst::Kind::internal_choice;
      bool first = true;
      for (const Branch& b : t->branches) {
        if (!first) out += internal ? " (+) " : " + ";
        first = false;
        out += internal ? "!" : "?";
        out += b.action;
        if (!guard_is_true(b.guard)) {
          out += "{" + render_guard(b.guard) + "}";
        }
        if (!b.resets.empty()) {
          out += "[";
          bool fc = true;
          for (const auto& c : b.resets) {
            if (!fc) out += ",";
            fc = false;
            out += c;
          }
          out += "]";
        }
        if (b.cont->kind != Tst::Kind::success) {
          out += ".";
          if (needs_parens_as_cont(b.cont)) {
            out += "(";
            render(b.cont, out);
            out += ")";
          } else {
            render(b.cont, out);
          }
        }
      }
      return;
    }
  }
}

}  // namespace

std::string render_tst(const TstPtr& p) {
  std::string out;
  render(p, out);
  return out;
}

}  // namespace tst
