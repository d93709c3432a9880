#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "lexer.hpp"
#include "olam/rational.hpp"
#include "olam/syntax.hpp"

namespace olam::detail {

bool is_reserved(std::string_view word);

/// Recursive-descent parser over a token vector. Shared by the program,
/// distribution and oracle-file front ends.
///
/// Two optional boundaries make an expression stop early: statement mode
/// (a token in column 1 other than the statement's first token) and a line
/// limit (any token on a different line).
class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Term term();
  TypeCon type();
  Kind kind();
  Rational rational();

  const Token& peek() const;
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
  /// True once every token is consumed, ignoring boundaries.
  bool exhausted() const { return toks_[i_].kind == Tok::End; }
  const Token& raw() const { return toks_[i_]; }

  Token advance();
  Token expect(Tok k, std::string_view what);
  void expect_word(std::string_view w);
  Name binder_name();

  void set_statement_mode(bool on) { statement_mode_ = on; }
  void begin_statement() { stmt_start_ = i_; }
  void set_line_limit(std::optional<int> line) { line_limit_ = line; }

  [[noreturn]] void fail(const std::string& message) const;

 private:
  bool boundary(std::size_t index) const;
  bool arg_start() const;
  Term application();
  Term postfix(bool* bare);
  Term atom(bool* bare);
  TypeCon type_binder_or_arrow();
  TypeCon type_conj();
  TypeCon type_prefix();
  TypeCon type_app();
  TypeCon type_atom();

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  bool statement_mode_ = false;
  std::size_t stmt_start_ = 0;
  std::optional<int> line_limit_;
};

}  // namespace olam::detail
