#include "freecat/parse.hpp"

#include <array>
#include <cctype>

#include "freecat/error.hpp"

namespace freecat {

// --- lexer -----------------------------------------------------------------

Lexer::Lexer(std::string_view src) {
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  auto is_ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'';
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (is_ident_char(c)) {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      t.kind = TokKind::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      std::string text;
      while (j < src.size() && src[j] != '"') {
        if (src[j] == '\\' && j + 1 < src.size()) ++j;
        text += src[j];
        ++j;
      }
      if (j >= src.size())
        throw FcError(ErrKind::parse, "unterminated string at line " +
                                          std::to_string(line));
      t.kind = TokKind::Str;
      t.text = std::move(text);
      advance(j + 1 - i);
    } else {
      static const std::array<std::string_view, 3> multi = {"-o", "->", "|-"};
      t.kind = TokKind::Punct;
      t.text = std::string(1, c);
      for (auto m : multi) {
        if (src.substr(i, m.size()) == m) {
          t.text = std::string(m);
          break;
        }
      }
      advance(t.text.size());
    }
    toks_.push_back(std::move(t));
  }
  Token end;
  end.kind = TokKind::End;
  end.line = line;
  end.col = col;
  toks_.push_back(std::move(end));
}

const Token& Lexer::peek(std::size_t ahead) const {
  std::size_t k = pos_ + ahead;
  if (k >= toks_.size()) k = toks_.size() - 1;
  return toks_[k];
}

Token Lexer::next() {
  Token t = peek();
  if (pos_ + 1 < toks_.size()) ++pos_;
  return t;
}

bool Lexer::peek_punct(std::string_view p, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokKind::Punct && t.text == p;
}

bool Lexer::peek_ident(std::string_view name, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokKind::Ident && t.text == name;
}

Token Lexer::expect_punct(std::string_view p) {
  if (!peek_punct(p)) fail_at(peek(), "expected '" + std::string(p) + "'");
  return next();
}

Token Lexer::expect_ident() {
  if (peek().kind != TokKind::Ident) fail_at(peek(), "expected identifier");
  return next();
}

void Lexer::fail_at(const Token& t, const std::string& msg) const {
  std::string got = t.kind == TokKind::End ? "end of input" : "'" + t.text + "'";
  throw FcError(ErrKind::parse, "parse error at line " + std::to_string(t.line) +
                                    ", col " + std::to_string(t.col) + ": " +
                                    msg + " (got " + got + ")");
}

// --- types -----------------------------------------------------------------

namespace {

TypePtr parse_type_primary(Lexer& lex, const Signature& sig, bool lenient) {
  if (lex.peek_punct("(")) {
    lex.next();
    TypePtr t = parse_type_tokens(lex, sig, lenient);
    lex.expect_punct(")");
    return t;
  }
  Token t = lex.expect_ident();
  if (t.text == "I" || t.text == "1") return t_unit();
  if (const TypePtr* alias = sig.find_alias(t.text)) return *alias;
  if (sig.has_object(t.text) || lenient) return t_basic(t.text);
  lex.fail_at(t, "unknown object name '" + t.text + "'");
}

TypePtr parse_type_dual(Lexer& lex, const Signature& sig, bool lenient) {
  TypePtr t = parse_type_primary(lex, sig, lenient);
  while (lex.peek_punct("^")) {
    lex.next();
    t = t_dual(t);
  }
  return t;
}

TypePtr parse_type_tensor(Lexer& lex, const Signature& sig, bool lenient) {
  TypePtr t = parse_type_dual(lex, sig, lenient);
  while (lex.peek_punct("*")) {
    lex.next();
    t = t_tensor(t, parse_type_dual(lex, sig, lenient));
  }
  return t;
}

} // namespace

TypePtr parse_type_tokens(Lexer& lex, const Signature& sig, bool lenient) {
  TypePtr t = parse_type_tensor(lex, sig, lenient);
  if (lex.peek_punct("-o")) {
    lex.next();
    TypePtr rhs = parse_type_tokens(lex, sig, lenient); // right-assoc
    t = t_hom(t, rhs);
  }
  return t;
}

TypePtr parse_type(std::string_view src, const Signature& sig) {
  Lexer lex(src);
  TypePtr t = parse_type_tokens(lex, sig, false);
  if (!lex.at_end()) lex.fail_at(lex.peek(), "trailing input after type");
  if (auto v = type_mode_violation(t, sig.mode))
    throw FcError(ErrKind::parse, *v);
  return canonical_type(t, sig.mode);
}

// --- morphisms ---------------------------------------------------------------

namespace {

std::vector<TypePtr> parse_type_args(Lexer& lex, const Signature& sig,
                                     std::size_t count) {
  lex.expect_punct("[");
  std::vector<TypePtr> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (i) lex.expect_punct(",");
    TypePtr t = parse_type_tokens(lex, sig, false);
    if (auto v = type_mode_violation(t, sig.mode)) {
      Token tok = lex.peek();
      lex.fail_at(tok, *v);
    }
    out.push_back(canonical_type(t, sig.mode));
  }
  lex.expect_punct("]");
  return out;
}

MorPtr parse_mor_primary(Lexer& lex, const Signature& sig) {
  if (lex.peek_punct("(")) {
    lex.next();
    MorPtr m = parse_mor_tokens(lex, sig);
    lex.expect_punct(")");
    return m;
  }
  Token t = lex.expect_ident();
  const std::string& w = t.text;
  auto args = [&](std::size_t n) { return parse_type_args(lex, sig, n); };

  if (w == "id") {
    auto a = args(1);
    return m_id(a[0]);
  }
  if (w == "assoc") {
    auto a = args(3);
    return m_assoc(a[0], a[1], a[2]);
  }
  if (w == "unassoc") {
    auto a = args(3);
    return m_unassoc(a[0], a[1], a[2]);
  }
  if (w == "left") {
    auto a = args(1);
    return m_leftu(a[0]);
  }
  if (w == "unleft") {
    auto a = args(1);
    return m_unleftu(a[0]);
  }
  if (w == "right") {
    auto a = args(1);
    return m_rightu(a[0]);
  }
  if (w == "unright") {
    auto a = args(1);
    return m_unrightu(a[0]);
  }
  if (w == "braid") {
    auto a = args(2);
    return m_braid(a[0], a[1]);
  }
  if (w == "braidinv") {
    auto a = args(2);
    return m_braidinv(a[0], a[1]);
  }
  if (w == "ev") {
    auto a = args(2);
    return m_ev(a[0], a[1]);
  }
  if (w == "cup") {
    auto a = args(1);
    return m_cup(a[0]);
  }
  if (w == "cap") {
    auto a = args(1);
    return m_cap(a[0]);
  }
  if (w == "dup") {
    auto a = args(1);
    return m_dup(a[0]);
  }
  if (w == "del") {
    auto a = args(1);
    return m_del(a[0]);
  }
  if (w == "p1") {
    auto a = args(2);
    return m_proj1(a[0], a[1]);
  }
  if (w == "p2") {
    auto a = args(2);
    return m_proj2(a[0], a[1]);
  }
  if (w == "curry" || w == "uncurry" || w == "name") {
    lex.expect_punct("(");
    MorPtr f = parse_mor_tokens(lex, sig);
    lex.expect_punct(")");
    if (w == "curry") return m_curry(f);
    if (w == "uncurry") return m_uncurry(f);
    return m_name(f);
  }
  if (w == "pair") {
    lex.expect_punct("(");
    MorPtr f = parse_mor_tokens(lex, sig);
    lex.expect_punct(",");
    MorPtr g = parse_mor_tokens(lex, sig);
    lex.expect_punct(")");
    return m_pair(f, g);
  }
  if (sig.find_gen(w)) return m_gen(w);
  if (const NamedTerm* nt = sig.find_term(w)) return nt->term;
  lex.fail_at(t, "unknown identifier '" + w +
                     "' (not a generator, named term, or structural form)");
}

MorPtr parse_mor_par(Lexer& lex, const Signature& sig) {
  MorPtr m = parse_mor_primary(lex, sig);
  while (lex.peek_punct("*")) {
    lex.next();
    m = m_par(m, parse_mor_primary(lex, sig));
  }
  return m;
}

} // namespace

MorPtr parse_mor_tokens(Lexer& lex, const Signature& sig) {
  MorPtr m = parse_mor_par(lex, sig);
  while (lex.peek_punct(";")) {
    lex.next();
    m = m_seq(m, parse_mor_par(lex, sig));
  }
  return m;
}

MorPtr parse_mor(std::string_view src, const Signature& sig) {
  Lexer lex(src);
  MorPtr m = parse_mor_tokens(lex, sig);
  if (!lex.at_end()) lex.fail_at(lex.peek(), "trailing input after morphism");
  return m;
}

// --- signatures --------------------------------------------------------------

namespace {

bool is_directive(const Token& t) {
  if (t.kind != TokKind::Ident) return false;
  return t.text == "mode" || t.text == "obj" || t.text == "alias" ||
         t.text == "gen" || t.text == "term";
}

} // namespace

Signature parse_signature(std::string_view src) {
  Lexer lex(src);
  Signature sig;
  bool saw_mode = false;
  bool saw_decl = false;
  while (!lex.at_end()) {
    Token head = lex.expect_ident();
    if (head.text == "mode") {
      if (saw_mode) lex.fail_at(head, "duplicate mode line");
      if (saw_decl) lex.fail_at(head, "mode line must precede declarations");
      Token m = lex.expect_ident();
      std::string mode_word = m.text;
      // canonical mode names are hyphenated ("closed-symmetric"); the lexer
      // splits on '-', so stitch the pieces back together
      while (lex.peek_punct("-") && lex.peek(1).kind == TokKind::Ident) {
        lex.next();
        mode_word += "-" + lex.next().text;
      }
      auto mode = mode_from_name(mode_word);
      if (!mode) lex.fail_at(m, "unknown mode '" + mode_word + "'");
      sig.mode = *mode;
      saw_mode = true;
      continue;
    }
    saw_decl = true;
    if (head.text == "obj") {
      if (lex.peek().kind != TokKind::Ident || is_directive(lex.peek()))
        lex.fail_at(lex.peek(), "obj needs at least one object name");
      while (lex.peek().kind == TokKind::Ident && !is_directive(lex.peek()))
        sig.objects.push_back(lex.next().text);
    } else if (head.text == "alias") {
      Token name = lex.expect_ident();
      lex.expect_punct("=");
      TypePtr t = parse_type_tokens(lex, sig, true);
      sig.aliases.emplace_back(name.text, canonical_type(t, sig.mode));
    } else if (head.text == "gen") {
      Token name = lex.expect_ident();
      lex.expect_punct(":");
      TypePtr dom = parse_type_tokens(lex, sig, true);
      lex.expect_punct("->");
      TypePtr cod = parse_type_tokens(lex, sig, true);
      sig.generators.push_back({name.text, canonical_type(dom, sig.mode),
                                canonical_type(cod, sig.mode)});
    } else if (head.text == "term") {
      Token name = lex.expect_ident();
      lex.expect_punct("=");
      MorPtr m = parse_mor_tokens(lex, sig);
      sig.terms.push_back({name.text, std::move(m)});
    } else {
      lex.fail_at(head, "expected one of: mode, obj, alias, gen, term");
    }
  }
  return sig;
}

} // namespace freecat
