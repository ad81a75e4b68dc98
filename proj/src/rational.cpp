#include "nilaff/rational.hpp"

namespace nilaff {

Rat Rat::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(mpz_class(s));
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) fail(ErrorKind::Parse, "zero denominator in '" + s + "'");
    return Rat(num, den);
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::Parse, "not a rational: '" + s + "'");
  }
}

std::string Rat::str() const {
  if (den() == 1) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

}  // namespace nilaff
