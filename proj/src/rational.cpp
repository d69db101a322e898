#include "orbicheck/rational.hpp"

#include <cctype>

#include "orbicheck/errors.hpp"

namespace orbicheck {

namespace {

bool valid_integer_text(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

static_assert(sizeof(long) == sizeof(long long), "gmpxx conversions assume LP64");

Rat::Rat(long long n) : v_(static_cast<long>(n)) {}

Rat::Rat(long long num, long long den) {
  if (den == 0) throw InputError("rational with zero denominator");
  v_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  v_.canonicalize();
}

Rat::Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rat Rat::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!valid_integer_text(num, true))
    throw InputError("malformed rational '" + std::string(text) + "'");
  std::string num_s(num);
  if (num_s[0] == '+') num_s.erase(0, 1);
  mpz_class n(num_s);
  mpz_class d(1);
  if (slash != std::string_view::npos) {
    std::string_view den = text.substr(slash + 1);
    if (!valid_integer_text(den, false))
      throw InputError("malformed rational '" + std::string(text) + "'");
    d = mpz_class(std::string(den));
    if (d == 0) throw InputError("rational with zero denominator '" + std::string(text) + "'");
  }
  return Rat(mpq_class(n, d));
}

std::string Rat::str() const { return v_.get_str(); }

bool Rat::is_integer() const { return v_.get_den() == 1; }

long long Rat::to_int() const {
  if (!is_integer()) throw InputError("expected an integer, got " + str());
  const mpz_class& n = v_.get_num();
  if (!n.fits_slong_p())
    throw InputError("integer out of range: " + str());
  return n.get_si();
}

Rat Rat::reciprocal() const {
  if (is_zero()) throw std::domain_error("reciprocal of zero");
  return Rat(mpq_class(1) / v_);
}

Rat Rat::abs() const { return sign() < 0 ? -*this : *this; }

Rat& Rat::operator+=(const Rat& o) {
  v_ += o.v_;
  return *this;
}
Rat& Rat::operator-=(const Rat& o) {
  v_ -= o.v_;
  return *this;
}
Rat& Rat::operator*=(const Rat& o) {
  v_ *= o.v_;
  return *this;
}
Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}
Rat Rat::operator-() const { return Rat(mpq_class(-v_)); }

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace orbicheck
