#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "orbicheck/errors.hpp"
#include "orbicheck/int_matrix.hpp"
#include "orbicheck/rational.hpp"

namespace orbicheck {

enum class RingKind { gaussian, eisenstein };

// a + b*omega, omega = i (omega^2 = -1) or zeta (zeta^2 = zeta - 1).
struct RingElem {
  long long a = 0;
  long long b = 0;
  friend auto operator<=>(const RingElem&, const RingElem&) = default;
};

// Same shape with rational coordinates; used for torsion points.
using RatElem = std::array<Rat, 2>;

class QuadraticRing {
 public:
  explicit QuadraticRing(RingKind kind) : kind_(kind) {}
  static QuadraticRing parse_kind(std::string_view name);

  RingKind kind() const { return kind_; }
  std::string name() const;
  std::string omega_name() const;  // "i" or "zeta"

  RingElem add(RingElem x, RingElem y) const;
  RingElem sub(RingElem x, RingElem y) const;
  RingElem neg(RingElem x) const;
  RingElem mul(RingElem x, RingElem y) const;
  RingElem conj(RingElem x) const;
  RingElem pow(RingElem x, unsigned k) const;
  long long norm(RingElem x) const;
  bool is_unit(RingElem x) const { return norm(x) == 1; }
  std::vector<RingElem> units() const;  // powers of i or zeta, in order
  std::optional<RingElem> unit_inverse(RingElem x) const;

  // Multiplication by x in the basis (1, omega).
  IntMatrix matrix_of(RingElem x) const;
  RatElem mul(RingElem x, const RatElem& z) const;

  // Euclidean division with |r| < |y|, quotient by coordinate rounding.
  std::pair<RingElem, RingElem> divmod(RingElem x, RingElem y) const;
  std::optional<RingElem> divide_exact(RingElem x, RingElem y) const;
  struct Bezout {
    RingElem g, u, v;  // u x + v y = g
  };
  Bezout xgcd(RingElem x, RingElem y) const;

  // Integer elements: "1", "-i", "2+3*zeta", "rho" (= zeta^2), "1-rho".
  RingElem parse(std::string_view text) const;
  // Rational elements: adds "/q" coefficients and the constant "tau" = (rho - 1)/3.
  RatElem parse_rational(std::string_view text) const;
  std::string format(RingElem x) const;
  std::string format(const RatElem& x) const;

  friend bool operator==(const QuadraticRing&, const QuadraticRing&) = default;

 private:
  RingKind kind_;
};

// Point of (C/L)^2 in lattice coordinates (z0, z1, w0, w1), entries in [0, 1).
class TorusPoint {
 public:
  TorusPoint() : x_(4) {}
  explicit TorusPoint(std::vector<Rat> coords);  // reduces mod 1
  static TorusPoint from_pair(const RatElem& z, const RatElem& w);

  const std::vector<Rat>& coords() const { return x_; }
  RatElem z() const { return {x_[0], x_[1]}; }
  RatElem w() const { return {x_[2], x_[3]}; }
  std::string str() const;

  friend TorusPoint operator+(const TorusPoint& a, const TorusPoint& b);
  friend TorusPoint operator-(const TorusPoint& a, const TorusPoint& b);
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
  friend bool operator<(const TorusPoint& a, const TorusPoint& b) { return a.x_ < b.x_; }

 private:
  std::vector<Rat> x_;
};

using RingMatrix = std::array<std::array<RingElem, 2>, 2>;

// x -> M x + t on a 4-dimensional real torus.
class AffineAuto {
 public:
  AffineAuto(IntMatrix m, TorusPoint t);  // InputError if M is 4x4 singular
  static AffineAuto identity();
  static AffineAuto translation(TorusPoint t);
  static AffineAuto ring_linear(const QuadraticRing& ring, const RingMatrix& m,
                                TorusPoint t = TorusPoint());

  const IntMatrix& matrix() const { return m_; }
  const TorusPoint& shift() const { return t_; }

  // (this o other)(x) = this(other(x))
  AffineAuto compose(const AffineAuto& other) const;
  AffineAuto inverse() const;  // requires |det M| = 1
  TorusPoint apply(const TorusPoint& p) const;
  bool is_unimodular() const;

  bool is_ring_linear(const QuadraticRing& ring) const;
  // Complex matrix of the linear part; UnsupportedError if not ring-linear.
  RingMatrix ring_matrix(const QuadraticRing& ring) const;

  std::string str() const;

  friend bool operator==(const AffineAuto&, const AffineAuto&) = default;
  friend bool operator<(const AffineAuto& a, const AffineAuto& b);

 private:
  IntMatrix m_;
  TorusPoint t_;
};

// Sublattice change of coordinates. Columns of `basis` are generators of a finite-index
// sublattice L' of Z^4. A map preserving L' becomes B^-1 M B with translation B^-1 shift,
// where `shift` is the real translation vector in the original coordinates (not reduced).
AffineAuto to_sublattice(const IntMatrix& basis, const IntMatrix& m,
                         const std::vector<Rat>& shift);

struct FixedLocus {
  long long det = 0;  // det(M - I)
  std::vector<TorusPoint> translates;
  std::vector<std::vector<long long>> directions;
  bool empty() const { return translates.empty(); }
  std::size_t real_dimension() const { return directions.size(); }
  std::size_t component_count() const { return translates.size(); }
};

// Solves (M - I) x = -t via Smith normal form.
FixedLocus fixed_points(const AffineAuto& f);

// The line {(a z, b z) + c}, gcd(a, b) = 1. Stored canonically as (a, b, q) with
// q = a*c_w - b*c_z mod L, and (a, b) normalized by units.
class AbelianCurve {
 public:
  static AbelianCurve line(const QuadraticRing& ring, RingElem a, RingElem b,
                           const TorusPoint& through);
  // {(z, mu z + c)}
  static AbelianCurve graph(const QuadraticRing& ring, RingElem mu, const RatElem& c);
  // {(c, z)}
  static AbelianCurve vertical(const QuadraticRing& ring, const RatElem& c);
  // {(z, c)}
  static AbelianCurve horizontal(const QuadraticRing& ring, const RatElem& c);

  const QuadraticRing& ring() const { return ring_; }
  RingElem a() const { return a_; }
  RingElem b() const { return b_; }
  const RatElem& q() const { return q_; }
  TorusPoint base_point() const;  // a point on the curve
  bool contains(const TorusPoint& p) const;
  std::string str() const;

  friend bool operator==(const AbelianCurve&, const AbelianCurve&) = default;

 private:
  AbelianCurve(QuadraticRing ring, RingElem a, RingElem b, RatElem q);
  RatElem phi(const TorusPoint& p) const;

  QuadraticRing ring_;
  RingElem a_, b_;
  RatElem q_;
};

struct CurveIntersection {
  long long count = 0;  // |N(a b' - a' b)|
  std::vector<TorusPoint> points;
};

// InputError on equal curves or mismatched rings. InconsistencyError if the determinant
// count and the solved point set disagree.
CurveIntersection curve_intersection(const AbelianCurve& c1, const AbelianCurve& c2);

AbelianCurve curve_image(const AffineAuto& f, const AbelianCurve& c);

// Behaviour of f on a curve it preserves: z -> lambda z + s.
struct CurveRestriction {
  RingElem lambda;
  bool pointwise_fixed = false;
};
std::optional<CurveRestriction> restriction(const AffineAuto& f, const AbelianCurve& c);

// Curves in a fixed locus whose continuous part is a complex line.
std::vector<AbelianCurve> fixed_curves(const QuadraticRing& ring, const FixedLocus& locus);

struct Overflow {
  std::size_t limit = 0;
};

class FiniteGroup {
 public:
  std::size_t order() const { return elements_.size(); }
  const std::vector<AffineAuto>& elements() const { return elements_; }
  const std::vector<AffineAuto>& generators() const { return generators_; }
  // Index of gens[g] o elements[i].
  std::size_t left_mul(std::size_t i, std::size_t g) const { return cayley_[i][g]; }
  std::optional<std::size_t> index_of(const AffineAuto& x) const;
  std::vector<std::size_t> center() const;
  std::size_t element_order(std::size_t i) const;

 private:
  friend std::variant<FiniteGroup, Overflow> group_closure(const std::vector<AffineAuto>&,
                                                           std::size_t);
  std::vector<AffineAuto> generators_;
  std::vector<AffineAuto> elements_;  // elements_[0] is the identity
  std::map<AffineAuto, std::size_t> index_;
  std::vector<std::vector<std::size_t>> cayley_;
};

// Breadth-first closure. InputError for non-unimodular generators.
std::variant<FiniteGroup, Overflow> group_closure(const std::vector<AffineAuto>& gens,
                                                  std::size_t bound);

struct OrbitData {
  std::vector<std::vector<std::size_t>> orbits;         // object indices
  std::vector<std::size_t> orbit_of;                    // per object
  std::vector<std::vector<std::size_t>> stabilizers;   // group element indices per object
};

// `act(g, obj)` must return an object equal to a member of `objects`.
template <class T, class Act>
OrbitData orbit_stabilizer(const FiniteGroup& group, const std::vector<T>& objects, Act act) {
  const std::size_t n = objects.size();
  std::vector<std::vector<std::size_t>> image(group.order(), std::vector<std::size_t>(n));
  for (std::size_t g = 0; g < group.order(); ++g)
    for (std::size_t i = 0; i < n; ++i) {
      T y = act(group.elements()[g], objects[i]);
      std::size_t k = 0;
      while (k < n && !(objects[k] == y)) ++k;
      if (k == n) throw InputError("group action does not preserve the object set");
      image[g][i] = k;
    }
  OrbitData d;
  d.orbit_of.assign(n, n);
  d.stabilizers.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t g = 0; g < group.order(); ++g)
      if (image[g][i] == i) d.stabilizers[i].push_back(g);
    if (d.orbit_of[i] != n) continue;
    std::vector<std::size_t> orbit;
    for (std::size_t g = 0; g < group.order(); ++g) {
      std::size_t k = image[g][i];
      if (d.orbit_of[k] == n) {
        d.orbit_of[k] = d.orbits.size();
        orbit.push_back(k);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    d.orbits.push_back(std::move(orbit));
  }
  return d;
}

// Elements of `group` fixing `c` pointwise.
std::vector<std::size_t> reflections_through(const FiniteGroup& group, const AbelianCurve& c);
// Elements fixing p whose linear part is a scalar, i.e. that fix the exceptional curve over p
// pointwise.
std::vector<std::size_t> reflections_through_exceptional(const FiniteGroup& group,
                                                         const QuadraticRing& ring,
                                                         const TorusPoint& p);

}  // namespace orbicheck
