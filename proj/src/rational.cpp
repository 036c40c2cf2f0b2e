#include "ggt/rational.hpp"

#include "ggt/errors.hpp"

namespace ggt {

std::string rat_to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

Rational rat_parse(std::string_view s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(Integer(std::string(s)));
    Integer num(std::string(s.substr(0, slash)));
    Integer den(std::string(s.substr(slash + 1)));
    if (den == 0) throw ParseError("zero denominator in rational '" + std::string(s) + "'");
    return Rational(num, den);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("malformed rational '" + std::string(s) + "'");
  }
}

}  // namespace ggt
