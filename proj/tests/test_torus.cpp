#include <doctest.h>

#include <algorithm>
#include <set>

#include "gen.hpp"
#include "oracles.hpp"
#include "orbicheck/catalog.hpp"
#include "orbicheck/errors.hpp"
#include "orbicheck/torus.hpp"

using namespace orbicheck;

namespace {

const QuadraticRing kGauss(RingKind::gaussian);
const QuadraticRing kEis(RingKind::eisenstein);

const Catalog& catalog() {
  static const Catalog cat = Catalog::embedded();
  return cat;
}

RingElem el(const QuadraticRing& r, const char* s) { return r.parse(s); }
RatElem q(const QuadraticRing& r, const char* s) { return r.parse_rational(s); }

AffineAuto lin(const QuadraticRing& r, const char* a, const char* b, const char* c, const char* d,
               TorusPoint t = TorusPoint()) {
  return AffineAuto::ring_linear(r, {{{el(r, a), el(r, b)}, {el(r, c), el(r, d)}}}, t);
}

FiniteGroup closure(const std::vector<AffineAuto>& gens, std::size_t bound = 1000) {
  auto g = group_closure(gens, bound);
  REQUIRE(std::holds_alternative<FiniteGroup>(g));
  return std::get<FiniteGroup>(g);
}

// Every declared torus together with its automorphisms.
std::vector<const TorusDecl*> all_tori() {
  std::vector<const TorusDecl*> out;
  for (const CatalogEntry& e : catalog().entries()) {
    if (e.torus) out.push_back(&*e.torus);
    for (const TorusDecl& t : e.tori) out.push_back(&t);
  }
  return out;
}

std::string library_description(const FixedLocus& f) {
  if (f.empty()) return "none";
  std::size_t n = f.component_count();
  if (f.real_dimension() == 0) return std::to_string(n) + (n == 1 ? " point" : " points");
  return std::to_string(n) + (n == 1 ? " component" : " components") + " of real dimension " +
         std::to_string(f.real_dimension());
}

AffineAuto random_auto(gen::Gen& g) {
  std::vector<Rat> t;
  for (int i = 0; i < 4; ++i) t.push_back(Rat(g.integer(0, 11), 12));
  return AffineAuto(g.unimodular(4, 5), TorusPoint(t));
}

}  // namespace

TEST_CASE("ring arithmetic") {
  CHECK(kGauss.mul(el(kGauss, "i"), el(kGauss, "i")) == RingElem{-1, 0});
  RingElem z = el(kEis, "zeta");
  CHECK(kEis.mul(z, z) == kEis.sub(z, RingElem{1, 0}));
  CHECK(kEis.pow(z, 6) == RingElem{1, 0});
  CHECK(kEis.pow(z, 3) == RingElem{-1, 0});
  CHECK(el(kEis, "rho") == kEis.mul(z, z));
  CHECK(kEis.pow(el(kEis, "rho"), 3) == RingElem{1, 0});
  RatElem tau = q(kEis, "tau");
  CHECK(tau[0] == Rat(-2, 3));
  CHECK(tau[1] == Rat(1, 3));
  CHECK(kGauss.matrix_of(RingElem{2, 3}) == IntMatrix{{2, -3}, {3, 2}});
  CHECK(kEis.matrix_of(RingElem{2, 3}) == IntMatrix{{2, -3}, {3, 5}});
  CHECK(kEis.norm(kEis.sub(el(kEis, "rho"), RingElem{1, 0})) == 3);
  CHECK(kGauss.units().size() == 4);
  CHECK(kEis.units().size() == 6);
  for (const char* s : {"1", "-i", "2+3*i", "1-i"}) CHECK(kGauss.format(kGauss.parse(s)) == kGauss.format(kGauss.parse(kGauss.format(kGauss.parse(s)))));
  CHECK_THROWS_AS(kGauss.parse("zeta"), InputError);
  CHECK_THROWS_AS(kGauss.parse("0.5"), InputError);
}

TEST_CASE("property: matrix_of is a ring homomorphism") {
  gen::Gen g(51);
  for (const QuadraticRing* r : {&kGauss, &kEis})
    for (int i = 0; i < 200; ++i) {
      RingElem x{g.integer(-9, 9), g.integer(-9, 9)}, y{g.integer(-9, 9), g.integer(-9, 9)};
      CHECK(r->matrix_of(r->mul(x, y)) == r->matrix_of(x) * r->matrix_of(y));
      CHECK(r->matrix_of(r->add(x, y)) == r->matrix_of(x) + r->matrix_of(y));
      CHECK(r->norm(r->mul(x, y)) == r->norm(x) * r->norm(y));
      CHECK(r->norm(x) == r->matrix_of(x).determinant());
    }
}

TEST_CASE("torsion points reduce mod 1") {
  TorusPoint p({Rat(3, 2), Rat(-1, 3), Rat(2), Rat(0)});
  CHECK(p.coords() == std::vector<Rat>{Rat(1, 2), Rat(2, 3), Rat(0), Rat(0)});
  CHECK(p + p == TorusPoint({Rat(0), Rat(1, 3), Rat(0), Rat(0)}));
}

TEST_CASE("fixed points") {
  SUBCASE("-Id on E x E has sixteen 2-torsion fixed points") {
    FixedLocus f = fixed_points(lin(kGauss, "-1", "0", "0", "-1"));
    CHECK(f.det == 16);
    CHECK(f.component_count() == 16);
    CHECK(f.real_dimension() == 0);
    for (const TorusPoint& p : f.translates)
      for (const Rat& x : p.coords()) CHECK((x * Rat(2)).is_integer());
  }
  SUBCASE("(z, rho w) fixes three horizontal curves w in {0, tau, 2 tau}") {
    FixedLocus f = fixed_points(lin(kEis, "1", "0", "0", "rho"));
    CHECK(f.det == 0);
    CHECK(f.real_dimension() == 2);
    CHECK(f.component_count() == 3);
    auto curves = fixed_curves(kEis, f);
    REQUIRE(curves.size() == 3);
    RatElem tau = q(kEis, "tau");
    RatElem two_tau{tau[0] * Rat(2), tau[1] * Rat(2)};
    for (const RatElem& c : {RatElem{Rat(0), Rat(0)}, tau, two_tau}) {
      AbelianCurve h = AbelianCurve::horizontal(kEis, c);
      CHECK(std::count(curves.begin(), curves.end(), h) == 1);
    }
  }
  SUBCASE("(z + tau, rho w) acts freely") {
    AffineAuto phi = lin(kEis, "1", "0", "0", "rho", TorusPoint::from_pair(q(kEis, "tau"), q(kEis, "0")));
    CHECK(fixed_points(phi).empty());
  }
  SUBCASE("identity") {
    FixedLocus f = fixed_points(AffineAuto::identity());
    CHECK(f.real_dimension() == 4);
    CHECK(f.component_count() == 1);
  }
}

TEST_CASE("curve images") {
  AffineAuto alpha = lin(kEis, "1", "rho", "1", "-1");
  AbelianCurve t1 = AbelianCurve::graph(kEis, RingElem{1, 0}, {Rat(0), Rat(0)});
  AbelianCurve t0 = AbelianCurve::horizontal(kEis, {Rat(0), Rat(0)});
  CHECK(curve_image(alpha, t1) == t0);
  CHECK(curve_image(AffineAuto::identity(), t1) == t1);
  AbelianCurve tz = AbelianCurve::graph(kEis, el(kEis, "zeta"), {Rat(0), Rat(0)});
  CHECK(curve_image(AffineAuto::identity(), tz) == tz);
  // Reparametrized lines normalize to the same curve.
  CHECK(AbelianCurve::line(kEis, el(kEis, "-zeta"), RingElem{0, 0}, TorusPoint()) == t0);
  IntMatrix odd{{2, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  CHECK_THROWS_AS(curve_image(AffineAuto(odd, TorusPoint()), t1), UnsupportedError);
}

TEST_CASE("curve intersections") {
  AbelianCurve c0 = AbelianCurve::graph(kGauss, RingElem{1, 0}, {Rat(0), Rat(0)});
  AbelianCurve c1 = AbelianCurve::graph(kGauss, RingElem{-1, 0}, {Rat(0), Rat(0)});
  CurveIntersection x = curve_intersection(c0, c1);
  CHECK(x.count == 4);
  CHECK(x.points.size() == 4);
  for (const TorusPoint& p : x.points) {
    CHECK(p.z() == p.w());
    for (const Rat& v : p.coords()) CHECK((v * Rat(2)).is_integer());
  }
  AbelianCurve t1 = AbelianCurve::graph(kEis, RingElem{1, 0}, {Rat(0), Rat(0)});
  AbelianCurve tz = AbelianCurve::graph(kEis, el(kEis, "zeta"), {Rat(0), Rat(0)});
  x = curve_intersection(t1, tz);
  CHECK(x.count == 1);
  CHECK(x.points == std::vector<TorusPoint>{TorusPoint()});
  AbelianCurve h0 = AbelianCurve::horizontal(kGauss, {Rat(1, 2), Rat(0)});
  AbelianCurve v0 = AbelianCurve::vertical(kGauss, {Rat(1, 2), Rat(0)});
  CHECK(curve_intersection(h0, v0).count == 1);
  AbelianCurve v1 = AbelianCurve::vertical(kGauss, {Rat(0), Rat(1, 2)});
  CHECK(curve_intersection(v0, v1).count == 0);
  CHECK_THROWS_AS(curve_intersection(c0, c0), InputError);
  CHECK_THROWS_AS(curve_intersection(c0, t1), InputError);
}

TEST_CASE("group closure") {
  CHECK(closure({lin(kEis, "1", "rho", "1", "-1"), lin(kEis, "1", "0", "1", "rho")}).order() == 72);
  CHECK(closure({lin(kGauss, "i", "0", "0", "1"), lin(kGauss, "1", "0", "0", "i")}).order() == 16);
  CHECK(closure({AffineAuto::identity()}).order() == 1);
  CHECK(closure({}).order() == 1);
  auto big = group_closure({lin(kEis, "1", "rho", "1", "-1"), lin(kEis, "1", "0", "1", "rho")}, 50);
  REQUIRE(std::holds_alternative<Overflow>(big));
  CHECK(std::get<Overflow>(big).limit == 50);
  // An infinite-order generator overflows rather than looping.
  CHECK(std::holds_alternative<Overflow>(group_closure({lin(kGauss, "1", "1", "0", "1")}, 200)));
}

TEST_CASE("the (alpha, beta) group") {
  AffineAuto alpha = lin(kEis, "1", "rho", "1", "-1"), beta = lin(kEis, "1", "0", "1", "rho");
  FiniteGroup f = closure({alpha, beta});
  CHECK(f.center().size() == 6);
  AffineAuto ab = alpha.compose(beta);
  CHECK(ab.compose(ab).compose(ab) == lin(kEis, "-1", "0", "0", "-1"));
  CHECK(alpha.compose(alpha) == lin(kEis, "zeta", "0", "0", "zeta"));
  CHECK(f.element_order(*f.index_of(alpha)) == 12);
  CHECK(f.element_order(*f.index_of(beta)) == 3);
}

TEST_CASE("orbit_stabilizer") {
  FiniteGroup f = closure({lin(kGauss, "i", "0", "0", "1"), lin(kGauss, "1", "0", "0", "i")});
  std::vector<TorusPoint> pts;
  for (auto [z, w] : std::vector<std::pair<const char*, const char*>>{
           {"0", "0"}, {"1/2", "1/2"}, {"i/2", "i/2"}, {"(1+i)/2", "(1+i)/2"}, {"1/2", "i/2"}, {"i/2", "1/2"}})
    pts.push_back(TorusPoint::from_pair(q(kGauss, z), q(kGauss, w)));
  auto act = [](const AffineAuto& g, const TorusPoint& p) { return g.apply(p); };
  OrbitData d = orbit_stabilizer(f, pts, act);
  std::multiset<std::size_t> sizes;
  for (const auto& o : d.orbits) sizes.insert(o.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 1, 4});
  CHECK(d.stabilizers[0].size() == 16);
  CHECK(d.stabilizers[3].size() == 16);
  CHECK(d.stabilizers[1].size() == 4);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(d.stabilizers[i].size() * d.orbits[d.orbit_of[i]].size() == 16);

  FiniteGroup trivial = closure({});
  OrbitData t = orbit_stabilizer(trivial, pts, act);
  CHECK(t.orbits.size() == pts.size());

  std::vector<TorusPoint> partial(pts.begin(), pts.begin() + 2);
  CHECK_THROWS_AS(orbit_stabilizer(f, partial, act), InputError);
}

TEST_CASE("property: fixed loci agree with torsion-grid brute force on all catalogue automorphisms") {
  std::size_t checked = 0;
  for (const TorusDecl* t : all_tori()) {
    std::vector<AffineAuto> maps;
    for (const AutoDecl& a : t->automorphisms) maps.push_back(build_auto(*t, a));
    for (const GroupDecl& g : t->groups) {
      FiniteGroup group = build_group(*t, g);
      maps.insert(maps.end(), group.elements().begin(), group.elements().end());
    }
    for (const AffineAuto& f : maps) {
      CAPTURE(f.str());
      FixedLocus lib = fixed_points(f);
      oracle::GridFixed grid = oracle::grid_fixed_points(f);
      CHECK(library_description(lib) == oracle::describe(grid));
      CHECK(Rat(lib.det) == oracle::fixed_det(f));
      if (lib.det != 0) {
        CHECK(lib.component_count() == static_cast<std::size_t>(lib.det < 0 ? -lib.det : lib.det));
        std::set<std::vector<Rat>> a, b;
        for (const TorusPoint& p : lib.translates) a.insert(p.coords());
        for (const auto& p : grid.points) {
          std::vector<Rat> x;
          for (long long k : p) x.push_back(Rat(k, grid.grid));
          b.insert(x);
        }
        CHECK(a == b);
      } else {
        for (const TorusPoint& p : lib.translates) CHECK(f.apply(p) == p);
      }
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("property: intersection counts equal solved point sets on all declared curves") {
  std::size_t pairs = 0;
  for (const TorusDecl* t : all_tori()) {
    TorusSurface s = build_torus_surface(*t);
    for (std::size_t i = 0; i < s.curves.size(); ++i)
      for (std::size_t j = i + 1; j < s.curves.size(); ++j) {
        CurveIntersection x = curve_intersection(s.curves[i].curve, s.curves[j].curve);
        CHECK(static_cast<std::size_t>(x.count) == x.points.size());
        std::set<TorusPoint> distinct(x.points.begin(), x.points.end());
        CHECK(distinct.size() == x.points.size());
        for (const TorusPoint& p : x.points) {
          CHECK(s.curves[i].curve.contains(p));
          CHECK(s.curves[j].curve.contains(p));
        }
        ++pairs;
      }
  }
  CHECK(pairs > 50);
}

TEST_CASE("property: closure agrees with naive repeated multiplication") {
  for (const TorusDecl* t : all_tori())
    for (const GroupDecl& g : t->groups) {
      CAPTURE(g.name);
      FiniteGroup lib = build_group(*t, g);
      std::vector<AffineAuto> gens;
      for (const std::string& n : g.generators)
        for (const AutoDecl& a : t->automorphisms)
          if (a.name == n) gens.push_back(build_auto(*t, a));
      auto naive = oracle::naive_closure(gens, 100);
      CHECK(lib.order() == naive.size());
      std::set<AffineAuto> a(lib.elements().begin(), lib.elements().end()), b(naive.begin(), naive.end());
      CHECK(a == b);
      // Closed under composition and inverses.
      for (const AffineAuto& x : lib.elements()) {
        CHECK(lib.index_of(x.inverse()).has_value());
        for (const AffineAuto& y : lib.generators()) CHECK(lib.index_of(x.compose(y)).has_value());
      }
      for (std::size_t i = 0; i < lib.order(); ++i) CHECK(lib.order() % lib.element_order(i) == 0);
    }
}

TEST_CASE("property: composition is associative and inverses cancel") {
  gen::Gen g(52);
  for (int i = 0; i < 300; ++i) {
    AffineAuto a = random_auto(g), b = random_auto(g), c = random_auto(g);
    CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
    CHECK(a.compose(a.inverse()) == AffineAuto::identity());
    std::vector<Rat> x;
    for (int k = 0; k < 4; ++k) x.push_back(Rat(g.integer(0, 23), 24));
    TorusPoint p(x);
    CHECK(a.compose(b).apply(p) == a.apply(b.apply(p)));
  }
}

TEST_CASE("sublattice coordinates") {
  // Translation by a point of the coarser lattice becomes trivial on the finer torus.
  IntMatrix basis{{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  AffineAuto f = to_sublattice(basis, IntMatrix::identity(4), {Rat(2), Rat(0), Rat(0), Rat(0)});
  CHECK(f == AffineAuto::identity());
  AffineAuto h = to_sublattice(basis, IntMatrix::identity(4), {Rat(1), Rat(0), Rat(0), Rat(0)});
  CHECK(h.shift().coords()[0] == Rat(1, 2));
  IntMatrix swap{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  CHECK_THROWS_AS(to_sublattice(basis, swap, {Rat(0), Rat(0), Rat(0), Rat(0)}), InputError);
}
