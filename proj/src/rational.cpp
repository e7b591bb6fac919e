#include "mixv/rational.hpp"

#include <stdexcept>

namespace mixv {

namespace {

mpz_class parse_integer(const std::string& text, const std::string& context) {
  if (text.empty()) {
    throw std::invalid_argument("empty integer in rational '" + context + "'");
  }
  try {
    return mpz_class(text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational '" + context + "'");
  }
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    return Rational(parse_integer(text, text));
  }
  const mpz_class num = parse_integer(text.substr(0, slash), text);
  const mpz_class den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in rational '" + text + "'");
  }
  Rational value(num, den);
  value.canonicalize();
  return value;
}

std::string rational_str(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace mixv
