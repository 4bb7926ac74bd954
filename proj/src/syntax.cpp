#include "ccp/syntax.hpp"

#include <cctype>

#include "ccp/errors.hpp"

namespace ccp {

TermPool::TermPool() {
  nodes_.push_back(Node{TermKind::Stop, ConstraintId{0}, TermId{0}, TermId{0}});
}

TermId TermPool::intern(TermKind kind, ConstraintId c, TermId l, TermId r) {
  Key key{kind, c.index, l.index, r.index};
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  TermId id{static_cast<std::uint32_t>(nodes_.size())};
  nodes_.push_back(Node{kind, c, l, r});
  index_.emplace(key, id);
  return id;
}

TermId TermPool::tell(ConstraintId c) { return intern(TermKind::Tell, c, TermId{0}, TermId{0}); }
TermId TermPool::ask(ConstraintId c, TermId body) {
  return intern(TermKind::Ask, c, body, TermId{0});
}
TermId TermPool::par(TermId l, TermId r) {
  return intern(TermKind::Par, ConstraintId{0}, l, r);
}
TermId TermPool::sum(TermId l, TermId r) {
  return intern(TermKind::Sum, ConstraintId{0}, l, r);
}

namespace {

// Precedence levels used by the printer: a node printed in a context that
// requires at least `min` gets parenthesized when it binds looser.
enum Level : int { kSum = 0, kPar = 1, kAtom = 2 };

int level_of(TermKind k) {
  switch (k) {
    case TermKind::Sum: return kSum;
    case TermKind::Par: return kPar;
    default: return kAtom;
  }
}

void print_term(const TermPool& pool, const ConstraintSystem& cs, TermId t, int min,
                std::string& out) {
  const bool paren = level_of(pool.kind(t)) < min;
  if (paren) out += '(';
  switch (pool.kind(t)) {
    case TermKind::Stop:
      out += "stop";
      break;
    case TermKind::Tell:
      out += "tell(";
      out += cs.name(pool.constraint(t));
      out += ')';
      break;
    case TermKind::Ask:
      out += "ask(";
      out += cs.name(pool.constraint(t));
      out += ") -> ";
      print_term(pool, cs, pool.left(t), kAtom, out);
      break;
    case TermKind::Par:
      // Left-associated chains print flat; a right-nested child keeps its
      // parentheses so the printed form parses back to the same tree.
      print_term(pool, cs, pool.left(t), kPar, out);
      out += " || ";
      print_term(pool, cs, pool.right(t), kAtom, out);
      break;
    case TermKind::Sum:
      print_term(pool, cs, pool.left(t), kSum, out);
      out += " + ";
      print_term(pool, cs, pool.right(t), kPar, out);
      break;
  }
  if (paren) out += ')';
}

struct Token {
  enum Type { Name, LParen, RParen, Plus, Par, Amp, Arrow, Comma, End } type;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  static bool name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool name_cont(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '<' ||
           c == '=' || c == '.';
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      tok_ = Token{Token::End, "", start};
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '(': tok_ = {Token::LParen, "(", start}; ++pos_; return;
      case ')': tok_ = {Token::RParen, ")", start}; ++pos_; return;
      case '+': tok_ = {Token::Plus, "+", start}; ++pos_; return;
      case ',': tok_ = {Token::Comma, ",", start}; ++pos_; return;
      case '&': tok_ = {Token::Amp, "&", start}; ++pos_; return;
      case '|':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '|') {
          tok_ = {Token::Par, "||", start};
          pos_ += 2;
          return;
        }
        throw ParseError("single '|' (parallel composition is '||')", start);
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          tok_ = {Token::Arrow, "->", start};
          pos_ += 2;
          return;
        }
        throw ParseError("stray '-'", start);
      default: break;
    }
    if (!name_start(c)) {
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    while (pos_ < text_.size() && name_cont(text_[pos_])) ++pos_;
    tok_ = Token{Token::Name, std::string(text_.substr(start, pos_ - start)), start};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token tok_{Token::End, "", 0};
};

class TermParser {
 public:
  TermParser(Lexer& lex, const NameResolver& names, const ConstraintSystem& cs, TermPool& pool)
      : lex_(lex), names_(names), cs_(cs), pool_(pool) {}

  TermId term() { return sum(); }

  ConstraintId cexpr() {
    ConstraintId acc = constraint_name();
    while (lex_.peek().type == Token::Amp) {
      lex_.take();
      acc = cs_.lub(acc, constraint_name());
    }
    return acc;
  }

  void expect_end() {
    if (lex_.peek().type != Token::End) {
      throw ParseError("trailing input '" + lex_.peek().text + "'", lex_.peek().pos);
    }
  }

 private:
  TermId sum() {
    TermId t = par();
    while (lex_.peek().type == Token::Plus) {
      lex_.take();
      t = pool_.sum(t, par());
    }
    return t;
  }

  TermId par() {
    TermId t = atom();
    while (lex_.peek().type == Token::Par) {
      lex_.take();
      t = pool_.par(t, atom());
    }
    return t;
  }

  TermId atom() {
    Token tok = lex_.take();
    switch (tok.type) {
      case Token::LParen: {
        TermId t = sum();
        expect(Token::RParen, ")");
        return t;
      }
      case Token::Name: {
        if (tok.text == "stop") return pool_.stop();
        if (tok.text == "tell") {
          expect(Token::LParen, "(");
          ConstraintId c = cexpr();
          expect(Token::RParen, ")");
          return pool_.tell(c);
        }
        if (tok.text == "ask") {
          expect(Token::LParen, "(");
          ConstraintId c = cexpr();
          expect(Token::RParen, ")");
          expect(Token::Arrow, "->");
          return pool_.ask(c, atom());
        }
        if (auto resolved = names_(tok.text)) return *resolved;
        throw ParseError("undefined process name '" + tok.text + "'", tok.pos);
      }
      default:
        throw ParseError("expected a process term, found '" + tok.text + "'", tok.pos);
    }
  }

  ConstraintId constraint_name() {
    Token tok = lex_.take();
    if (tok.type != Token::Name) {
      throw ParseError("expected a constraint name, found '" + tok.text + "'", tok.pos);
    }
    if (auto id = cs_.find(tok.text)) return *id;
    throw ParseError("undefined constraint name '" + tok.text + "'", tok.pos);
  }

  void expect(Token::Type type, const char* what) {
    Token tok = lex_.take();
    if (tok.type != type) {
      throw ParseError(std::string("expected '") + what + "', found '" +
                           (tok.type == Token::End ? "end of input" : tok.text) + "'",
                       tok.pos);
    }
  }

  Lexer& lex_;
  const NameResolver& names_;
  const ConstraintSystem& cs_;
  TermPool& pool_;
};

}  // namespace

std::string TermPool::pretty(TermId t, const ConstraintSystem& cs) const {
  std::string out;
  print_term(*this, cs, t, kSum, out);
  return out;
}

TermId parse_term(std::string_view text, const NameResolver& names, const ConstraintSystem& cs,
                  TermPool& pool) {
  Lexer lex(text);
  TermParser parser(lex, names, cs, pool);
  TermId t = parser.term();
  parser.expect_end();
  return t;
}

Configuration parse_config(std::string_view text, const NameResolver& names,
                           const ConstraintSystem& cs, TermPool& pool) {
  // "<" term "," cexpr ">": the wrapping brackets are handled textually so
  // that '<' inside constraint names never reaches the lexer.
  std::size_t first = text.find_first_not_of(" \t\r\n");
  std::size_t last = text.find_last_not_of(" \t\r\n");
  if (first == std::string_view::npos || text[first] != '<' || text[last] != '>' || last <= first) {
    throw ParseError("configuration must be written '<term, store>'", first == std::string_view::npos ? 0 : first);
  }
  std::string_view inner = text.substr(first + 1, last - first - 1);
  std::size_t comma = inner.find_last_of(',');
  if (comma == std::string_view::npos) {
    throw ParseError("configuration is missing the ', store' part", last);
  }
  TermId t = parse_term(inner.substr(0, comma), names, cs, pool);
  Lexer storeLex(inner.substr(comma + 1));
  TermParser storeParser(storeLex, names, cs, pool);
  ConstraintId store = storeParser.cexpr();
  storeParser.expect_end();
  return Configuration{t, store};
}

NameResolver resolver_from(const std::map<std::string, TermId, std::less<>>& definitions) {
  return [&definitions](std::string_view name) -> std::optional<TermId> {
    auto it = definitions.find(name);
    if (it == definitions.end()) return std::nullopt;
    return it->second;
  };
}

std::string pretty_config(const Configuration& gamma, const TermPool& pool,
                          const ConstraintSystem& cs) {
  return "⟨" + pool.pretty(gamma.process, cs) + ", " + cs.name(gamma.store) + "⟩";
}

std::string config_literal(const Configuration& gamma, const TermPool& pool,
                           const ConstraintSystem& cs) {
  return "<" + pool.pretty(gamma.process, cs) + ", " + cs.name(gamma.store) + ">";
}

}  // namespace ccp
