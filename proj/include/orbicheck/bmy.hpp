#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbicheck/arrangement.hpp"
#include "orbicheck/rational.hpp"

namespace orbicheck {

// Orbifold weight r in {2, 3, ...} or infinity (a cusp).
class Weight {
 public:
  static Weight finite(long long r);  // InputError unless r >= 2
  static Weight infinite();
  static Weight parse(std::string_view text);  // "5", "inf"

  bool is_infinite() const { return order_ == 0; }
  long long order() const;  // throws for infinity
  Rat coefficient() const;  // 1 - 1/r, exactly 1 for infinity
  std::string str() const;
  // r * b, with infinity absorbing. b >= 1.
  Weight times(long long b) const;

  friend bool operator==(const Weight&, const Weight&) = default;
  // Finite weights by order, infinity last.
  friend bool operator<(const Weight& a, const Weight& b);

 private:
  explicit Weight(long long order) : order_(order) {}
  long long order_;  // 0 encodes infinity
};

using WeightAssignment = std::map<CurveId, Weight>;

WeightAssignment weights_by_name(const Arrangement& arr,
                                 const std::vector<std::pair<std::string, Weight>>& named);

// sum (1 - 1/r_j) D_j
QDivisor boundary_divisor(const Arrangement& arr, const WeightAssignment& w);
// K + boundary
QDivisor log_canonical(const Arrangement& arr, const WeightAssignment& w);

Rat c1_sq(const Arrangement& arr, const WeightAssignment& w);
// General normal-crossing formula. Every intersection point of two weighted curves must be a
// declared crossing (InputError); a point on three weighted curves, or two infinite ones,
// raises UnsupportedError.
Rat c2_orb(const Arrangement& arr, const WeightAssignment& w);
// e(Y) - sum (1 - 1/r_j) e(D_j); only for weighted curves that pairwise do not meet.
Rat c2_orb_disjoint(const Arrangement& arr, const WeightAssignment& w);

extern const std::string_view kDeclaredCurvesCaveat;

struct NakaiCertificate {
  Rat L_sq;
  std::vector<std::pair<CurveId, Rat>> pairings;  // L.C for every declared curve
  bool pass = false;
  bool square_positive = false;
  std::optional<CurveId> witness;  // first curve with L.C <= 0
  std::string caveat;
};

NakaiCertificate nakai_check(const Arrangement& arr, const WeightAssignment& w);

struct PairReport {
  Rat c1_sq;
  Rat c2;
  bool bmy_equal = false;
  NakaiCertificate nakai;
  bool holds() const { return bmy_equal && nakai.pass; }
};

PairReport verify_pair(const Arrangement& arr, const WeightAssignment& w);

}  // namespace orbicheck
