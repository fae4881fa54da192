#include "grd/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace grd {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::abs() const {
  return sign() < 0 ? -*this : *this;
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  auto check_int = [&](const std::string& s) {
    if (s.empty()) throw std::invalid_argument("bad rational '" + text + "'");
    size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("bad rational '" + text + "'");
    for (size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad rational '" + text + "'");
  };
  // mpz_set_str rejects a leading '+'
  auto to_mpz = [](const std::string& s) { return mpz_class(s[0] == '+' ? s.substr(1) : s); };
  if (slash == std::string::npos) {
    check_int(text);
    return Rational(mpq_class(to_mpz(text)));
  }
  std::string p = text.substr(0, slash);
  std::string q = text.substr(slash + 1);
  check_int(p);
  check_int(q);
  mpz_class den = to_mpz(q);
  if (den <= 0) throw std::invalid_argument("bad rational '" + text + "': denominator must be positive");
  return Rational(mpq_class(to_mpz(p), den));
}

std::string Rational::str() const {
  std::string s = v_.get_num().get_str();
  if (v_.get_den() != 1) s += "/" + v_.get_den().get_str();
  return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace grd
