#include "orbicheck/torus.hpp"

#include <cctype>
#include <deque>
#include <sstream>

namespace orbicheck {

namespace {

// floor(n / d) for d > 0
long long floor_div(long long n, long long d) {
  long long q = n / d;
  if ((n % d != 0) && (n < 0)) --q;
  return q;
}

RatElem reduce(const RatElem& x) { return {frac(x[0]), frac(x[1])}; }

}  // namespace

QuadraticRing QuadraticRing::parse_kind(std::string_view name) {
  if (name == "gaussian") return QuadraticRing(RingKind::gaussian);
  if (name == "eisenstein") return QuadraticRing(RingKind::eisenstein);
  throw InputError("unknown ring '" + std::string(name) + "' (expected gaussian or eisenstein)");
}

std::string QuadraticRing::name() const {
  return kind_ == RingKind::gaussian ? "gaussian" : "eisenstein";
}

std::string QuadraticRing::omega_name() const {
  return kind_ == RingKind::gaussian ? "i" : "zeta";
}

RingElem QuadraticRing::add(RingElem x, RingElem y) const {
  return {checked_add(x.a, y.a), checked_add(x.b, y.b)};
}
RingElem QuadraticRing::sub(RingElem x, RingElem y) const { return add(x, neg(y)); }
RingElem QuadraticRing::neg(RingElem x) const {
  return {checked_mul(-1, x.a), checked_mul(-1, x.b)};
}

RingElem QuadraticRing::mul(RingElem x, RingElem y) const {
  long long ac = checked_mul(x.a, y.a), bd = checked_mul(x.b, y.b);
  long long cross = checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a));
  if (kind_ == RingKind::gaussian) return {checked_add(ac, -bd), cross};
  return {checked_add(ac, -bd), checked_add(cross, bd)};
}

RingElem QuadraticRing::conj(RingElem x) const {
  if (kind_ == RingKind::gaussian) return {x.a, -x.b};
  return {checked_add(x.a, x.b), -x.b};
}

RingElem QuadraticRing::pow(RingElem x, unsigned k) const {
  RingElem r{1, 0};
  while (k--) r = mul(r, x);
  return r;
}

long long QuadraticRing::norm(RingElem x) const {
  long long s = checked_add(checked_mul(x.a, x.a), checked_mul(x.b, x.b));
  if (kind_ == RingKind::eisenstein) s = checked_add(s, checked_mul(x.a, x.b));
  return s;
}

std::vector<RingElem> QuadraticRing::units() const {
  std::vector<RingElem> u;
  unsigned n = kind_ == RingKind::gaussian ? 4 : 6;
  for (unsigned k = 0; k < n; ++k) u.push_back(pow({0, 1}, k));
  return u;
}

std::optional<RingElem> QuadraticRing::unit_inverse(RingElem x) const {
  for (RingElem u : units())
    if (mul(u, x) == RingElem{1, 0}) return u;
  return std::nullopt;
}

IntMatrix QuadraticRing::matrix_of(RingElem x) const {
  if (kind_ == RingKind::gaussian) return IntMatrix{{x.a, -x.b}, {x.b, x.a}};
  return IntMatrix{{x.a, -x.b}, {x.b, checked_add(x.a, x.b)}};
}

RatElem QuadraticRing::mul(RingElem x, const RatElem& z) const {
  std::vector<Rat> v = matrix_of(x).apply({z[0], z[1]});
  return {v[0], v[1]};
}

std::pair<RingElem, RingElem> QuadraticRing::divmod(RingElem x, RingElem y) const {
  long long n = norm(y);
  if (n == 0) throw std::domain_error("division by zero in ring");
  RingElem num = mul(x, conj(y));
  // round(v / n) = floor((2v + n) / 2n)
  RingElem q{floor_div(checked_add(checked_mul(2, num.a), n), checked_mul(2, n)),
             floor_div(checked_add(checked_mul(2, num.b), n), checked_mul(2, n))};
  RingElem r = sub(x, mul(q, y));
  if (norm(r) >= n) throw InconsistencyError("Euclidean division did not reduce the norm");
  return {q, r};
}

std::optional<RingElem> QuadraticRing::divide_exact(RingElem x, RingElem y) const {
  auto [q, r] = divmod(x, y);
  if (r != RingElem{0, 0}) return std::nullopt;
  return q;
}

QuadraticRing::Bezout QuadraticRing::xgcd(RingElem x, RingElem y) const {
  RingElem r0 = x, r1 = y, u0{1, 0}, u1{0, 0}, v0{0, 0}, v1{1, 0};
  while (r1 != RingElem{0, 0}) {
    auto [q, r] = divmod(r0, r1);
    r0 = r1;
    r1 = r;
    RingElem u2 = sub(u0, mul(q, u1)), v2 = sub(v0, mul(q, v1));
    u0 = u1;
    u1 = u2;
    v0 = v1;
    v1 = v2;
  }
  return {r0, u0, v0};
}

namespace {

// Recursive-descent parser for ring expressions with rational coefficients.
class ElemParser {
 public:
  ElemParser(const QuadraticRing& ring, std::string_view text) : ring_(ring), s_(text) {}

  RatElem parse() {
    RatElem v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("ring element '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RatElem mul(const RatElem& x, const RatElem& y) const {
    // (x0 + x1 w)(y0 + y1 w)
    Rat ac = x[0] * y[0], bd = x[1] * y[1], cross = x[0] * y[1] + x[1] * y[0];
    if (ring_.kind() == RingKind::gaussian) return {ac - bd, cross};
    return {ac - bd, cross + bd};
  }
  RatElem expr() {
    RatElem v{Rat(0), Rat(0)};
    bool negate = false;
    if (eat('-'))
      negate = true;
    else
      eat('+');
    for (;;) {
      RatElem t = term();
      if (negate) t = {-t[0], -t[1]};
      v = {v[0] + t[0], v[1] + t[1]};
      if (eat('+'))
        negate = false;
      else if (eat('-'))
        negate = true;
      else
        return v;
    }
  }
  RatElem term() {
    RatElem v = factor();
    for (;;) {
      if (eat('*')) {
        v = mul(v, factor());
      } else if (eat('/')) {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer denominator");
        Rat d = Rat::parse(s_.substr(start, pos_ - start));
        if (d.is_zero()) fail("zero denominator");
        v = {v[0] / d, v[1] / d};
      } else {
        return v;
      }
    }
  }
  RatElem factor() {
    skip();
    if (eat('(')) {
      RatElem v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (eat('-')) {
      RatElem v = factor();
      return {-v[0], -v[1]};
    }
    std::size_t start = pos_;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return {Rat::parse(s_.substr(start, pos_ - start)), Rat(0)};
    }
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string_view word = s_.substr(start, pos_ - start);
    if (word.empty()) fail("expected a number or symbol");
    bool eis = ring_.kind() == RingKind::eisenstein;
    if (!eis && word == "i") return {Rat(0), Rat(1)};
    if (eis && word == "zeta") return {Rat(0), Rat(1)};
    if (eis && word == "rho") return {Rat(-1), Rat(1)};
    if (eis && word == "tau") return {Rat(-2, 3), Rat(1, 3)};
    fail("unknown symbol '" + std::string(word) + "' for the " + ring_.name() + " ring");
  }

  const QuadraticRing& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RatElem QuadraticRing::parse_rational(std::string_view text) const {
  return ElemParser(*this, text).parse();
}

RingElem QuadraticRing::parse(std::string_view text) const {
  RatElem v = parse_rational(text);
  if (!v[0].is_integer() || !v[1].is_integer())
    throw InputError("ring element '" + std::string(text) + "' is not integral");
  return {v[0].to_int(), v[1].to_int()};
}

std::string QuadraticRing::format(const RatElem& x) const {
  if (x[1].is_zero()) return x[0].str();
  std::string w = omega_name();
  std::string tail = x[1] == Rat(1) ? w : (x[1] == Rat(-1) ? "-" + w : x[1].str() + "*" + w);
  if (x[0].is_zero()) return tail;
  return x[0].str() + (tail[0] == '-' ? "" : "+") + tail;
}

std::string QuadraticRing::format(RingElem x) const { return format(RatElem{Rat(x.a), Rat(x.b)}); }

TorusPoint::TorusPoint(std::vector<Rat> coords) : x_(std::move(coords)) {
  if (x_.size() != 4) throw InputError("torus point needs four coordinates");
  for (Rat& v : x_) v = frac(v);
}

TorusPoint TorusPoint::from_pair(const RatElem& z, const RatElem& w) {
  return TorusPoint({z[0], z[1], w[0], w[1]});
}

std::string TorusPoint::str() const {
  return "[" + x_[0].str() + ", " + x_[1].str() + ", " + x_[2].str() + ", " + x_[3].str() + "]";
}

TorusPoint operator+(const TorusPoint& a, const TorusPoint& b) {
  std::vector<Rat> v(4);
  for (int i = 0; i < 4; ++i) v[i] = a.x_[i] + b.x_[i];
  return TorusPoint(std::move(v));
}

TorusPoint operator-(const TorusPoint& a, const TorusPoint& b) {
  std::vector<Rat> v(4);
  for (int i = 0; i < 4; ++i) v[i] = a.x_[i] - b.x_[i];
  return TorusPoint(std::move(v));
}

AffineAuto::AffineAuto(IntMatrix m, TorusPoint t) : m_(std::move(m)), t_(std::move(t)) {
  if (m_.rows() != 4 || m_.cols() != 4) throw InputError("affine map needs a 4x4 matrix");
  if (m_.determinant() == 0) throw InputError("affine map with singular matrix " + m_.str());
}

AffineAuto AffineAuto::identity() { return AffineAuto(IntMatrix::identity(4), TorusPoint()); }

AffineAuto AffineAuto::translation(TorusPoint t) {
  return AffineAuto(IntMatrix::identity(4), std::move(t));
}

AffineAuto AffineAuto::ring_linear(const QuadraticRing& ring, const RingMatrix& m,
                                   TorusPoint t) {
  IntMatrix big(4, 4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      IntMatrix blk = ring.matrix_of(m[r][c]);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) big(2 * r + i, 2 * c + j) = blk(i, j);
    }
  return AffineAuto(std::move(big), std::move(t));
}

AffineAuto AffineAuto::compose(const AffineAuto& other) const {
  std::vector<Rat> t = m_.apply(other.t_.coords());
  for (int i = 0; i < 4; ++i) t[i] += t_.coords()[i];
  return AffineAuto(m_ * other.m_, TorusPoint(std::move(t)));
}

AffineAuto AffineAuto::inverse() const {
  IntMatrix inv = unimodular_inverse(m_);
  std::vector<Rat> t = inv.apply(t_.coords());
  for (Rat& v : t) v = -v;
  return AffineAuto(std::move(inv), TorusPoint(std::move(t)));
}

TorusPoint AffineAuto::apply(const TorusPoint& p) const {
  std::vector<Rat> v = m_.apply(p.coords());
  for (int i = 0; i < 4; ++i) v[i] += t_.coords()[i];
  return TorusPoint(std::move(v));
}

bool AffineAuto::is_unimodular() const {
  long long d = m_.determinant();
  return d == 1 || d == -1;
}

bool AffineAuto::is_ring_linear(const QuadraticRing& ring) const {
  IntMatrix w = ring.matrix_of({0, 1});
  IntMatrix j = IntMatrix::block_diag(w, w);
  return j * m_ == m_ * j;
}

RingMatrix AffineAuto::ring_matrix(const QuadraticRing& ring) const {
  if (!is_ring_linear(ring))
    throw UnsupportedError("linear part " + m_.str() + " is not " + ring.name() + "-linear");
  RingMatrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = RingElem{m_(2 * i, 2 * j), m_(2 * i + 1, 2 * j)};
  return r;
}

std::string AffineAuto::str() const { return "(" + m_.str() + ", " + t_.str() + ")"; }

bool operator<(const AffineAuto& a, const AffineAuto& b) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (a.m_(i, j) != b.m_(i, j)) return a.m_(i, j) < b.m_(i, j);
  return a.t_ < b.t_;
}

AffineAuto to_sublattice(const IntMatrix& basis, const IntMatrix& m,
                         const std::vector<Rat>& shift) {
  auto binv = rational_inverse(basis);
  const std::size_t n = basis.rows();
  IntMatrix mb = m * basis;
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat v;
      for (std::size_t k = 0; k < n; ++k) v += binv[i][k] * Rat(mb(k, j));
      if (!v.is_integer())
        throw InputError("map " + m.str() + " does not preserve the sublattice " + basis.str());
      out(i, j) = v.to_int();
    }
  std::vector<Rat> t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) t[i] += binv[i][k] * shift[k];
  return AffineAuto(std::move(out), TorusPoint(std::move(t)));
}

FixedLocus fixed_points(const AffineAuto& f) {
  IntMatrix a = f.matrix() - IntMatrix::identity(4);
  std::vector<Rat> b = f.shift().coords();
  for (Rat& v : b) v = -v;
  CongruenceSolution sol = solve_congruence(a, b);
  FixedLocus locus;
  locus.det = a.determinant();
  for (auto& x : sol.translates) locus.translates.emplace_back(std::move(x));
  if (sol.solvable) locus.directions = std::move(sol.directions);
  std::sort(locus.translates.begin(), locus.translates.end());
  return locus;
}

AbelianCurve::AbelianCurve(QuadraticRing ring, RingElem a, RingElem b, RatElem q)
    : ring_(ring), a_(a), b_(b), q_(reduce(q)) {}

RatElem AbelianCurve::phi(const TorusPoint& p) const {
  RatElem aw = ring_.mul(a_, p.w()), bz = ring_.mul(b_, p.z());
  return reduce({aw[0] - bz[0], aw[1] - bz[1]});
}

AbelianCurve AbelianCurve::line(const QuadraticRing& ring, RingElem a, RingElem b,
                                const TorusPoint& through) {
  if (a == RingElem{0, 0} && b == RingElem{0, 0}) throw InputError("curve direction is zero");
  RingElem g = ring.xgcd(a, b).g;
  a = *ring.divide_exact(a, g);
  b = *ring.divide_exact(b, g);
  std::optional<std::pair<RingElem, RingElem>> best;
  int best_rank = 3;
  for (RingElem u : ring.units()) {
    std::pair<RingElem, RingElem> cand{ring.mul(u, a), ring.mul(u, b)};
    int rank = cand.first == RingElem{1, 0} ? 0 : (cand.second == RingElem{1, 0} ? 1 : 2);
    if (!best || rank < best_rank || (rank == best_rank && cand < *best)) {
      best = cand;
      best_rank = rank;
    }
  }
  AbelianCurve c(ring, best->first, best->second, RatElem{Rat(0), Rat(0)});
  c.q_ = c.phi(through);
  return c;
}

AbelianCurve AbelianCurve::graph(const QuadraticRing& ring, RingElem mu, const RatElem& c) {
  return line(ring, {1, 0}, mu, TorusPoint::from_pair({Rat(0), Rat(0)}, c));
}

AbelianCurve AbelianCurve::vertical(const QuadraticRing& ring, const RatElem& c) {
  return line(ring, {0, 0}, {1, 0}, TorusPoint::from_pair(c, {Rat(0), Rat(0)}));
}

AbelianCurve AbelianCurve::horizontal(const QuadraticRing& ring, const RatElem& c) {
  return line(ring, {1, 0}, {0, 0}, TorusPoint::from_pair({Rat(0), Rat(0)}, c));
}

TorusPoint AbelianCurve::base_point() const {
  auto bz = ring_.xgcd(a_, b_);
  RingElem ginv = *ring_.unit_inverse(bz.g);
  RingElem u = ring_.mul(bz.u, ginv), v = ring_.mul(bz.v, ginv);
  RatElem z = ring_.mul(ring_.neg(v), q_), w = ring_.mul(u, q_);
  TorusPoint p = TorusPoint::from_pair(z, w);
  if (phi(p) != q_) throw InconsistencyError("curve base point is not on the curve");
  return p;
}

bool AbelianCurve::contains(const TorusPoint& p) const { return phi(p) == q_; }

std::string AbelianCurve::str() const {
  TorusPoint p = base_point();
  return "{(" + ring_.format(a_) + ")z + " + ring_.format(p.z()) + ", (" + ring_.format(b_) +
         ")z + " + ring_.format(p.w()) + "}";
}

CurveIntersection curve_intersection(const AbelianCurve& c1, const AbelianCurve& c2) {
  if (!(c1.ring() == c2.ring())) throw InputError("curves live on different tori");
  if (c1 == c2) throw InputError("intersection of a curve with itself is not defined here");
  const QuadraticRing& ring = c1.ring();
  IntMatrix a(4, 4);
  auto put = [&](int row, RingElem x, int col) {
    IntMatrix blk = ring.matrix_of(x);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a(row + i, col + j) = blk(i, j);
  };
  put(0, ring.neg(c1.b()), 0);
  put(0, c1.a(), 2);
  put(2, ring.neg(c2.b()), 0);
  put(2, c2.a(), 2);
  std::vector<Rat> rhs{c1.q()[0], c1.q()[1], c2.q()[0], c2.q()[1]};
  CongruenceSolution sol = solve_congruence(a, rhs);
  CurveIntersection out;
  RingElem cross = ring.sub(ring.mul(c1.a(), c2.b()), ring.mul(c2.a(), c1.b()));
  out.count = ring.norm(cross);
  if (out.count == 0) {
    if (sol.solvable) throw InconsistencyError("parallel distinct curves share a point");
    return out;
  }
  if (!sol.directions.empty() || static_cast<long long>(sol.translates.size()) != out.count ||
      std::llabs(a.determinant()) != out.count)
    throw InconsistencyError("intersection count disagrees with the solved point set");
  for (auto& x : sol.translates) out.points.emplace_back(std::move(x));
  std::sort(out.points.begin(), out.points.end());
  for (const TorusPoint& p : out.points)
    if (!c1.contains(p) || !c2.contains(p))
      throw InconsistencyError("solved intersection point is off the curves");
  return out;
}

AbelianCurve curve_image(const AffineAuto& f, const AbelianCurve& c) {
  const QuadraticRing& ring = c.ring();
  RingMatrix m = f.ring_matrix(ring);
  RingElem a = ring.add(ring.mul(m[0][0], c.a()), ring.mul(m[0][1], c.b()));
  RingElem b = ring.add(ring.mul(m[1][0], c.a()), ring.mul(m[1][1], c.b()));
  return AbelianCurve::line(ring, a, b, f.apply(c.base_point()));
}

std::optional<CurveRestriction> restriction(const AffineAuto& f, const AbelianCurve& c) {
  if (!(curve_image(f, c) == c)) return std::nullopt;
  const QuadraticRing& ring = c.ring();
  RingMatrix m = f.ring_matrix(ring);
  RingElem a = ring.add(ring.mul(m[0][0], c.a()), ring.mul(m[0][1], c.b()));
  RingElem b = ring.add(ring.mul(m[1][0], c.a()), ring.mul(m[1][1], c.b()));
  std::optional<RingElem> lambda = c.a() != RingElem{0, 0} ? ring.divide_exact(a, c.a())
                                                           : ring.divide_exact(b, c.b());
  if (!lambda || ring.mul(*lambda, c.a()) != a || ring.mul(*lambda, c.b()) != b)
    throw InconsistencyError("preserved curve without a scalar restriction");
  TorusPoint base = c.base_point();
  CurveRestriction r{*lambda, *lambda == RingElem{1, 0} && f.apply(base) == base};
  return r;
}

std::vector<AbelianCurve> fixed_curves(const QuadraticRing& ring, const FixedLocus& locus) {
  std::vector<AbelianCurve> out;
  if (locus.real_dimension() != 2) return out;
  const auto& d1 = locus.directions[0];
  const auto& d2 = locus.directions[1];
  RingElem a{d1[0], d1[1]}, b{d1[2], d1[3]};
  // d2 must lie on the complex line through d1.
  RingElem x = a != RingElem{0, 0} ? a : b;
  RatElem y = a != RingElem{0, 0} ? RatElem{Rat(d2[0]), Rat(d2[1])}
                                  : RatElem{Rat(d2[2]), Rat(d2[3])};
  RatElem num = ring.mul(ring.conj(x), y);
  Rat n(ring.norm(x));
  RatElem z{num[0] / n, num[1] / n};
  auto mulr = [&](RingElem e, const RatElem& v) { return ring.mul(e, v); };
  RatElem az = mulr(a, z), bz = mulr(b, z);
  if (az != RatElem{Rat(d2[0]), Rat(d2[1])} || bz != RatElem{Rat(d2[2]), Rat(d2[3])})
    return out;
  for (const TorusPoint& p : locus.translates) {
    AbelianCurve c = AbelianCurve::line(ring, a, b, p);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

std::optional<std::size_t> FiniteGroup::index_of(const AffineAuto& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> FiniteGroup::center() const {
  std::vector<std::size_t> z;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    bool central = true;
    for (const AffineAuto& g : generators_)
      if (!(g.compose(elements_[i]) == elements_[i].compose(g))) {
        central = false;
        break;
      }
    if (central) z.push_back(i);
  }
  return z;
}

std::size_t FiniteGroup::element_order(std::size_t i) const {
  AffineAuto x = elements_[i];
  std::size_t k = 1;
  while (!(x == elements_[0])) {
    x = x.compose(elements_[i]);
    ++k;
  }
  return k;
}

std::variant<FiniteGroup, Overflow> group_closure(const std::vector<AffineAuto>& gens,
                                                  std::size_t bound) {
  if (bound < 1) throw InputError("group closure bound must be at least 1");
  for (const AffineAuto& g : gens)
    if (!g.is_unimodular())
      throw InputError("generator " + g.str() + " is not invertible on the torus");
  FiniteGroup grp;
  grp.generators_ = gens;
  grp.elements_.push_back(AffineAuto::identity());
  grp.index_.emplace(grp.elements_[0], 0);
  for (std::size_t i = 0; i < grp.elements_.size(); ++i) {
    std::vector<std::size_t> row;
    for (const AffineAuto& g : gens) {
      AffineAuto h = g.compose(grp.elements_[i]);
      auto [it, fresh] = grp.index_.emplace(h, grp.elements_.size());
      if (fresh) {
        if (grp.elements_.size() >= bound) return Overflow{bound};
        grp.elements_.push_back(h);
      }
      row.push_back(it->second);
    }
    grp.cayley_.push_back(std::move(row));
  }
  return grp;
}

std::vector<std::size_t> reflections_through(const FiniteGroup& group, const AbelianCurve& c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < group.order(); ++i) {
    auto r = restriction(group.elements()[i], c);
    if (r && r->pointwise_fixed) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> reflections_through_exceptional(const FiniteGroup& group,
                                                         const QuadraticRing& ring,
                                                         const TorusPoint& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < group.order(); ++i) {
    const AffineAuto& g = group.elements()[i];
    if (!(g.apply(p) == p)) continue;
    RingMatrix m = g.ring_matrix(ring);
    if (m[0][1] == RingElem{0, 0} && m[1][0] == RingElem{0, 0} && m[0][0] == m[1][1])
      out.push_back(i);
  }
  return out;
}

}  // namespace orbicheck
