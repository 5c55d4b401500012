#include "segre/gaussian.hpp"

#include <sstream>
#include <stdexcept>

namespace segre {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational: " + s);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const GaussianScalar& a) {
  return os << to_string(a);
}

std::string to_string(const GaussianScalar& a) {
  if (a.is_real()) return a.re.get_str();
  std::ostringstream os;
  if (sgn(a.re) != 0) {
    os << a.re.get_str() << (sgn(a.im) > 0 ? "+" : "");
  }
  os << a.im.get_str() << "i";
  return os.str();
}

}  // namespace segre
