#include "singmod/rational.hpp"

#include <stdexcept>

namespace singmod {

std::string to_pq_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer in rational");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("sign without digits");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw std::invalid_argument("bad digit in rational: " + std::string(s));
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits, 10);
  };
  auto slash = text.find('/');
  Integer num = parse_int(text.substr(0, slash));
  Integer den = 1;
  if (slash != std::string_view::npos) den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

}  // namespace singmod
