#pragma once

// Parsing of field elements and field descriptors; the inverse of the
// to_string functions in scalar.hpp.
//
// Element grammar:  expr := term (('+'|'-') term)*
//                   term := unary (('*'|'/') unary)*
//                   unary := '-' unary | power
//                   power := atom ('^' '-'? integer)?
//                   atom := integer | name | 'sqrt' '(' expr ')' | '(' expr ')'
//
// Descriptor grammar: ('QQ' | 'GF(' p ')') suffix*
//                   suffix := '[sqrt(' expr ')]' | '(' name ')' | '[' name ']/(' expr ')'

#include <cctype>
#include <string>
#include <string_view>

#include "scalar.hpp"

namespace boroczky {

namespace detail {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  FieldElement expr(const Field& k) {
    FieldElement acc = term(k);
    for (;;) {
      skip();
      if (accept('+')) acc += term(k);
      else if (accept('-')) acc -= term(k);
      else return acc;
    }
  }

  Field descriptor() {
    skip();
    Field k;
    if (accept_word("QQ")) {
      k = rationals();
    } else if (accept_word("GF")) {
      expect('(');
      Integer p = integer();
      expect(')');
      k = prime_field(std::stoull(p.get_str()));
    } else {
      fail("expected QQ or GF(p)");
    }
    for (;;) {
      skip();
      if (at_end()) return k;
      if (accept_word("[sqrt(")) {
        FieldElement d = expr(k);
        expect(')');
        expect(']');
        k = quadratic_extension(k, d);
      } else if (accept('(')) {
        std::string var = name();
        expect(')');
        k = function_field(k, var);
      } else if (accept('[')) {
        std::string var = name();
        expect(']');
        expect('/');
        expect('(');
        Field ring = function_field(k, var);
        FieldElement poly = expr(ring);
        expect(')');
        if (poly.ratfunc().den.size() != 1) fail("defining polynomial has a denominator");
        k = quotient_extension(k, var, poly.ratfunc().num);
      } else {
        fail("unexpected character in field descriptor");
      }
    }
  }

  void finish() {
    skip();
    if (!at_end()) fail("trailing characters");
  }

  bool at_end() const { return pos_ >= text_.size(); }

  void expect(char c) {
    skip();
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

 private:
  FieldElement term(const Field& k) {
    FieldElement acc = unary(k);
    for (;;) {
      skip();
      if (accept('*')) acc *= unary(k);
      else if (accept('/')) acc /= unary(k);
      else return acc;
    }
  }

  FieldElement unary(const Field& k) {
    skip();
    if (accept('-')) return -unary(k);
    if (accept('+')) return unary(k);
    return power(k);
  }

  FieldElement power(const Field& k) {
    FieldElement base = atom(k);
    skip();
    if (accept('^')) {
      skip();
      bool negative = accept('-');
      Integer e = integer();
      FieldElement r = boroczky::pow(base, e.get_ui());
      return negative ? inverse(r) : r;
    }
    return base;
  }

  FieldElement atom(const Field& k) {
    skip();
    if (at_end()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return from_integer(k, integer());
    if (accept('(')) {
      FieldElement v = expr(k);
      expect(')');
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id = name();
      if (id == "sqrt") {
        expect('(');
        Field quad;
        for (Field f = k; f; f = f->base)
          if (f->kind == FieldKind::QuadExt) {
            quad = f;
            break;
          }
        if (!quad) fail("sqrt outside a quadratic extension");
        FieldElement d = expr(quad->base);
        expect(')');
        return embed(sqrt_in(quad, d), k);
      }
      for (Field f = k; f; f = f->base)
        if ((f->kind == FieldKind::FunctionField || f->kind == FieldKind::QuotientExt) && f->var == id)
          return embed(generator(f), k);
      fail("unknown name '" + id + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Integer integer() {
    skip();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  std::string name() {
    skip();
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_word(std::string_view w) {
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError, why + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline FieldElement parse_element(const Field& k, std::string_view text) {
  detail::ScalarParser p(text);
  FieldElement v = p.expr(k);
  p.finish();
  return v;
}

inline Field parse_field(std::string_view text) {
  detail::ScalarParser p(text);
  return p.descriptor();
}

}  // namespace boroczky
