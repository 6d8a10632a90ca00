#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace freecat {

enum class TokKind { Ident, Punct, Str, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t col = 1;
};

// Shared tokenizer for signatures, morphisms, proofs, lambda and linear
// terms. `#` starts a line comment. Multi-char puncts: -o -> |- ~ the rest
// are single characters.
class Lexer {
public:
  explicit Lexer(std::string_view src);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == TokKind::End; }

  bool peek_punct(std::string_view p, std::size_t ahead = 0) const;
  bool peek_ident(std::string_view name, std::size_t ahead = 0) const;
  // Consume a specific punct/ident or fail with a positioned parse error.
  Token expect_punct(std::string_view p);
  Token expect_ident();

  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const;

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

} // namespace freecat
