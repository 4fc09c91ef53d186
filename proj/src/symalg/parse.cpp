#include "cstgeo/symalg/parse.hpp"

#include <cctype>
#include <string>

#include "cstgeo/error.hpp"

namespace cstgeo::symalg {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  DiffOp parse_all() {
    DiffOp value = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) +
                     "'");
  }

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

  DiffOp expression() {
    DiffOp value = term();
    while (true) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  DiffOp term() {
    DiffOp value = unary();
    while (true) {
      if (accept('*')) {
        value = compose(value, unary());
      } else if (accept('/')) {
        DiffOp divisor = unary();
        if (divisor.order() != 0) fail("division by a differential operator");
        value = divisor.multiplier().inverse() * value;
      } else {
        return value;
      }
    }
  }

  DiffOp unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  DiffOp power() {
    DiffOp base = atom();
    if (!accept('^')) return base;
    skip_space();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    unsigned exponent = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
    if (negative) {
      if (base.order() != 0) fail("negative power of a differential operator");
      return DiffOp::multiplication(base.multiplier().inverse().pow(exponent));
    }
    DiffOp result = DiffOp::identity();
    for (unsigned k = 0; k < exponent; ++k) result = compose(result, base);
    return result;
  }

  DiffOp atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      DiffOp inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  DiffOp number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    // lower-case exponent only; upper-case E is a symbol
    if (pos_ + 1 < text_.size() && text_[pos_] == 'e' &&
        (std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
         ((text_[pos_ + 1] == '-' || text_[pos_ + 1] == '+') && pos_ + 2 < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[pos_ + 2]))))) {
      pos_ += 2;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    return DiffOp::multiplication(
        Polynomial(rational_from_decimal(std::string(text_.substr(start, pos_ - start)))));
  }

  DiffOp identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string_view word = text_.substr(start, pos_ - start);
    if (word == "i") return DiffOp::multiplication(Polynomial::imaginary_unit());
    static constexpr std::array<std::pair<std::string_view, Var>, kNumCoordinates> kMarkers = {{
        {"d1", Var::x1}, {"d2", Var::x2}, {"d3", Var::x3},
        {"dy", Var::y},  {"du1", Var::u1}, {"du2", Var::u2},
    }};
    for (const auto& [marker, coordinate] : kMarkers) {
      if (word == marker) return DiffOp::partial(coordinate);
    }
    if (auto v = var_from_name(word)) return DiffOp::multiplication(Polynomial::var(*v));
    pos_ = start;
    fail("unknown symbol '" + std::string(word) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

DiffOp parse_diffop(std::string_view text) { return Parser(text).parse_all(); }

Polynomial parse_polynomial(std::string_view text) {
  DiffOp op = parse_diffop(text);
  if (op.order() != 0) throw ParseError("derivative marker in polynomial text: " + std::string(text));
  return op.multiplier();
}

}  // namespace cstgeo::symalg
