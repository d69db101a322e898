#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace orbicheck {

// Exact rational in canonical form (reduced, positive denominator).
class Rat {
 public:
  Rat() = default;
  Rat(long long n);  // NOLINT(google-explicit-constructor)
  Rat(long long num, long long den);

  // Accepts "p", "-p", "p/q". Whitespace and decimals are rejected.
  static Rat parse(std::string_view text);

  std::string str() const;
  bool is_integer() const;
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  // Throws InputError if not an integer or out of int64 range.
  long long to_int() const;
  Rat reciprocal() const;
  Rat abs() const;

  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);
  Rat operator-() const;

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return v_; }

 private:
  explicit Rat(mpq_class v);
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace orbicheck
