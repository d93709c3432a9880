#include "lexer.hpp"

#include <cctype>

namespace olam::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto peek = [&](std::size_t off) -> char { return i + off < text.size() ? text[i + off] : '\0'; };

  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '-' && peek(1) == '-') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    SourcePos pos{line, col};
    auto simple = [&](Tok k, std::size_t len) {
      out.push_back(Token{k, std::string(text.substr(i, len)), pos});
      advance(len);
    };
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      simple(Tok::Ident, j - i);
      continue;
    }
    if (digit(c)) {
      std::size_t j = i;
      while (j < text.size() && digit(text[j])) ++j;
      simple(Tok::Number, j - i);
      continue;
    }
    switch (c) {
      case '#': {
        std::size_t j = i + 1;
        if (j >= text.size() || !ident_start(text[j]))
          throw Error(ErrorCode::LexError, "expected oracle name after '#'", pos);
        while (j < text.size() && ident_char(text[j])) ++j;
        out.push_back(Token{Tok::Oracle, std::string(text.substr(i + 1, j - i - 1)), pos});
        advance(j - i);
        continue;
      }
      case '"': {
        std::size_t j = i + 1;
        std::string body;
        while (j < text.size() && text[j] != '"') {
          if (text[j] == '\n') throw Error(ErrorCode::LexError, "unterminated string", pos);
          if (text[j] == '\\' && j + 1 < text.size()) ++j;
          body += text[j++];
        }
        if (j >= text.size()) throw Error(ErrorCode::LexError, "unterminated string", pos);
        out.push_back(Token{Tok::String, std::move(body), pos});
        advance(j + 1 - i);
        continue;
      }
      case '.':
        if ((peek(1) == '0' || peek(1) == '1') && !digit(peek(2))) {
          out.push_back(Token{Tok::Proj, std::string(1, peek(1)), pos});
          advance(2);
        } else {
          simple(Tok::Dot, 1);
        }
        continue;
      case '\\':
        if (peek(1) == '\\') simple(Tok::ConLambda, 2);
        else simple(Tok::Lambda, 1);
        continue;
      case '-':
        if (peek(1) == '>') {
          simple(Tok::Arrow, 2);
          continue;
        }
        break;
      case '/':
        if (peek(1) == '\\') simple(Tok::Wedge, 2);
        else simple(Tok::Slash, 1);
        continue;
      case ':': simple(Tok::Colon, 1); continue;
      case '<': simple(Tok::LAngle, 1); continue;
      case '>': simple(Tok::RAngle, 1); continue;
      case ',': simple(Tok::Comma, 1); continue;
      case '(': simple(Tok::LParen, 1); continue;
      case ')': simple(Tok::RParen, 1); continue;
      case '[': simple(Tok::LBracket, 1); continue;
      case ']': simple(Tok::RBracket, 1); continue;
      case '{': simple(Tok::LBrace, 1); continue;
      case '}': simple(Tok::RBrace, 1); continue;
      case '!': simple(Tok::Bang, 1); continue;
      case '=': simple(Tok::Equals, 1); continue;
      case '*': simple(Tok::Star, 1); continue;
      default: break;
    }
    throw Error(ErrorCode::LexError, std::string("unexpected character '") + c + "'", pos);
  }
  out.push_back(Token{Tok::End, "", SourcePos{line, col}});
  return out;
}

std::string_view tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Oracle: return "oracle name";
    case Tok::Number: return "number";
    case Tok::String: return "string";
    case Tok::Proj: return "projection";
    case Tok::Lambda: return "'\\'";
    case Tok::ConLambda: return "'\\\\'";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::Arrow: return "'->'";
    case Tok::Wedge: return "'/\\'";
    case Tok::Slash: return "'/'";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::Comma: return "','";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Bang: return "'!'";
    case Tok::Equals: return "'='";
    case Tok::Star: return "'*'";
    case Tok::End: return "end of input";
  }
  return "?";
}

}  // namespace olam::detail
