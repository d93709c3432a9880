#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "olam/error.hpp"

namespace olam::detail {

enum class Tok {
  Ident,
  Oracle,   // #name, text holds the name
  Number,
  String,   // text holds the unquoted contents
  Proj,     // .0 or .1, text holds the digit
  Lambda,   // backslash
  ConLambda,  // double backslash
  Colon,
  Dot,
  Arrow,
  Wedge,    // /\ .
  Slash,
  LAngle,
  RAngle,
  Comma,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Bang,
  Equals,
  Star,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

std::vector<Token> tokenize(std::string_view text);

std::string_view tok_name(Tok t);

}  // namespace olam::detail
