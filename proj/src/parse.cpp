#include <cctype>

#include "propint/errors.hpp"
#include "propint/polynomial.hpp"
#include "propint/rational.hpp"

namespace propint {

Rational parse_rational(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    return j;
  };
  std::size_t num_end = digits(i);
  if (num_end == i) throw ParseError("expected digits in rational '" + std::string(text) + "'", i);
  Integer num(std::string(text.substr(i, num_end - i)));
  Integer den = 1;
  std::size_t end = num_end;
  if (end < text.size() && text[end] == '/') {
    std::size_t den_end = digits(end + 1);
    if (den_end == end + 1) throw ParseError("expected denominator", end + 1);
    den = Integer(std::string(text.substr(end + 1, den_end - end - 1)));
    if (den == 0) throw ParseError("zero denominator", end + 1);
    end = den_end;
  }
  if (end != text.size()) throw ParseError("trailing characters in rational", end);
  Rational q(num, den);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

class Parser {
 public:
  Parser(std::string_view text, const PolyRing& ring) : text_(text), ring_(ring) {}

  Polynomial run() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    skip_space();
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected exponent", start);
      if (pos_ - start > 9) throw ParseError("exponent too large", start);
      base = pow(base, static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Polynomial atom() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::size_t den_start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (den_start == pos_) throw ParseError("expected denominator", den_start);
      }
      Rational q;
      try {
        q = parse_rational(text_.substr(start, pos_ - start));
      } catch (const ParseError&) {
        throw ParseError("bad rational literal", start);
      }
      return Polynomial::constant(ring_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto index = ring_.index_of(name);
      if (!index) throw ParseError("unknown variable '" + std::string(name) + "'", start);
      return Polynomial::variable(ring_, *index);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  const PolyRing& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const PolyRing& ring) { return Parser(text, ring).run(); }

}  // namespace propint
