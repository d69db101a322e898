#include <doctest.h>

#include "gen.hpp"
#include "orbicheck/arrangement.hpp"
#include "orbicheck/catalog.hpp"
#include "orbicheck/errors.hpp"

using namespace orbicheck;

namespace {

const Catalog& catalog() {
  static const Catalog cat = Catalog::embedded();
  return cat;
}

// C x C for a genus-2 curve C: two fibres, five graphs meeting pairwise in three points.
Arrangement genus2_square() {
  ArrangementBuilder b(4);
  b.curve("H0", 2, 0).curve("V0", 2, 0).meet("H0", "V0", 1);
  std::vector<std::string> all{"H0", "V0"};
  for (int j = 0; j < 5; ++j) {
    std::string c = "C" + std::to_string(j);
    b.curve(c, 2, -2).meet(c, "H0", 1).meet(c, "V0", 1);
    for (int k = 0; k < j; ++k) b.meet(c, "C" + std::to_string(k), 3);
    all.push_back(c);
  }
  b.crossing("x0", all);
  std::vector<std::string> cs(all.begin() + 2, all.end());
  b.crossing("x1", cs).crossing("x2", cs);
  b.canonical_combination({{"H0", 2}, {"V0", 2}});
  return b.build();
}

// T x T with four elliptic curves through the origin.
Arrangement four_elliptic() {
  ArrangementBuilder b(0);
  std::vector<std::string> names{"T0", "Tinf", "T1", "Tzeta"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    b.curve(names[i], 1, 0);
    for (std::size_t k = 0; k < i; ++k) b.meet(names[i], names[k], 1);
  }
  b.crossing("o", names).canonical_combination({});
  return b.build();
}

QDivisor random_divisor(gen::Gen& g, const Arrangement& arr) {
  QDivisor d = QDivisor::canonical(arr.has_canonical() ? g.rat(5, 4) : Rat(0));
  for (int k = 0; k < 3; ++k) d += QDivisor::curve(g.index(arr.size()), g.rat(5, 4));
  return d;
}

}  // namespace

TEST_CASE("pairings on the genus-2 arrangement after blowup") {
  Arrangement y = build_surface(catalog().get("wiman-g2"));
  QDivisor k = QDivisor::canonical();
  CHECK(pair(k, k, y) == Rat(5));
  CHECK(pair(k, QDivisor::curve(y.id_of("D0")), y) == Rat(7));
  CHECK(pair(QDivisor(), QDivisor::curve(y.id_of("D3")), y) == Rat(0));
  CHECK(pair(QDivisor(), k, y) == Rat(0));
  CHECK_THROWS_AS(pair(QDivisor::curve(99), k, y), InputError);
}

TEST_CASE("adjunction check") {
  SUBCASE("genus-2 curves: 2 = 7 + (-5)") {
    Arrangement y = build_surface(catalog().get("wiman-g2"));
    AdjunctionReport r = adjunction_check(y);
    CHECK(r.all_pass());
    const AdjunctionEntry& d = r.entries[y.id_of("D2")];
    CHECK(d.lhs == 2);
    CHECK(d.canonical_pairing == Rat(7));
    CHECK(d.self_int == Rat(-5));
  }
  SUBCASE("elliptic curves through the blown-up origin: 0 = 1 + (-1)") {
    Arrangement y = build_surface(catalog().get("hirzebruch-eisenstein"));
    CHECK(adjunction_check(y).all_pass());
    CHECK(y.canonical_pairing(y.id_of("D1")) == Rat(1));
    CHECK(y.curve(y.id_of("D1")).self_int == Rat(-1));
  }
  SUBCASE("exceptional curve with numerical canonical class") {
    Arrangement a = ArrangementBuilder(1)
                        .curve("E", 0, -1)
                        .canonical_pairings({{"E", -1}}, Rat(-1))
                        .build();
    CHECK(adjunction_check(a).all_pass());
  }
  SUBCASE("a wrong self-intersection is reported, not thrown") {
    Arrangement a = ArrangementBuilder(1)
                        .curve("E", 0, -2)
                        .canonical_pairings({{"E", -1}}, Rat(-1))
                        .build();
    AdjunctionReport r = adjunction_check(a);
    CHECK_FALSE(r.all_pass());
    CHECK_FALSE(r.entries[0].pass);
  }
  SUBCASE("no canonical class") {
    Arrangement a = ArrangementBuilder(3).curve("L", 0, 1).build();
    CHECK_THROWS_AS(adjunction_check(a), UnsupportedError);
  }
}

TEST_CASE("derive_self_int") {
  Arrangement y = build_surface(catalog().get("wiman-g2"));
  CHECK(derive_self_int(y, y.id_of("D0")) == Rat(-5));
  Arrangement x = genus2_square();
  CHECK(x.canonical_pairing(x.id_of("C0")) == Rat(4));
  CHECK(derive_self_int(x, x.id_of("C0")) == Rat(-2));
  CHECK(derive_self_int(y, y.id_of("E0")) == Rat(-1));
  Arrangement bare = ArrangementBuilder(3).curve("L", 0, 1).build();
  CHECK_THROWS_AS(derive_self_int(bare, 0), UnsupportedError);
}

TEST_CASE("blowup examples") {
  SUBCASE("three common points of the five graphs") {
    Arrangement x = genus2_square();
    CHECK(x.canonical_square() == Rat(8));
    Arrangement y = blowup(x, {center_at_crossing(x, "x0", "E0"), center_at_crossing(x, "x1", "E1"),
                               center_at_crossing(x, "x2", "E2")});
    CHECK(y.euler_surface() == 7);
    CHECK(y.curve(y.id_of("C3")).self_int == Rat(-5));
    CHECK(y.canonical_square() == Rat(5));
    CHECK(y.canonical_pairing(y.id_of("C3")) == Rat(7));
    CHECK(y.canonical_pairing(y.id_of("E1")) == Rat(-1));
    CHECK(y.intersection(y.id_of("C0"), y.id_of("C1")) == 0);
    CHECK(y.intersection(y.id_of("C0"), y.id_of("E2")) == 1);
    CHECK(y.intersection(y.id_of("H0"), y.id_of("V0")) == 0);
    // E0 meets seven proper transforms and E1, E2 five each, at distinct new crossings.
    CHECK(y.crossings().size() == 17);
    for (const CrossingPoint& p : y.crossings()) {
      CHECK(p.incident.size() == 2);
      CHECK(y.curve(p.incident[1]).name.front() == 'E');
    }
    CHECK(adjunction_check(y).all_pass());
  }
  SUBCASE("four elliptic curves through one point") {
    Arrangement x = four_elliptic();
    Arrangement y = blowup(x, {center_at_crossing(x, "o", "L")});
    CHECK(y.euler_surface() == 1);
    for (const char* n : {"T0", "Tinf", "T1", "Tzeta"}) CHECK(y.curve(y.id_of(n)).self_int == Rat(-1));
    CHECK(y.canonical_square() == Rat(-1));
    CHECK(adjunction_check(y).all_pass());
  }
  SUBCASE("a point on no declared curve") {
    Arrangement x = four_elliptic();
    Arrangement y = blowup(x, {BlowupCenter{{}, "P"}});
    CHECK(y.euler_surface() == 1);
    CHECK(y.size() == x.size() + 1);
    CHECK(y.curve(y.id_of("P")).self_int == Rat(-1));
    for (CurveId i = 0; i < x.size(); ++i) {
      CHECK(y.curve(i) == x.curve(i));
      for (CurveId j = 0; j < x.size(); ++j)
        if (i != j) CHECK(y.intersection(i, j) == x.intersection(i, j));
    }
    CHECK(y.crossings() == x.crossings());
  }
  SUBCASE("curves without a common point are rejected") {
    Arrangement x = genus2_square();
    Arrangement y = blowup(x, {center_at_crossing(x, "x0", "E0")});
    CHECK_THROWS_AS(blowup(y, {BlowupCenter{{y.id_of("H0"), y.id_of("V0")}, "F"}}), InputError);
    CHECK_THROWS_AS(center_at_crossing(x, "nowhere", "F"), InputError);
  }
}

TEST_CASE("arrangement invariants are enforced") {
  SUBCASE("more crossings than intersections") {
    ArrangementBuilder b(4);
    b.curve("A", 0, 0).curve("B", 0, 0).meet("A", "B", 1).crossing("p", {"A", "B"}).crossing("q", {"A", "B"});
    CHECK_THROWS_AS(b.build(), InputError);
  }
  SUBCASE("a crossing repeating a curve") {
    ArrangementBuilder b(4);
    b.curve("A", 0, 0).curve("B", 0, 0).meet("A", "B", 1).crossing("p", {"A", "A"});
    CHECK_THROWS_AS(b.build(), InputError);
  }
  SUBCASE("non-integral self-intersection") {
    ArrangementBuilder b(4);
    b.curve("A", 0, Rat(1, 2));
    CHECK_THROWS_AS(b.build(), InputError);
  }
  SUBCASE("non-integral canonical pairing") {
    ArrangementBuilder b(4);
    b.curve("A", 0, 0).curve("B", 0, 0).meet("A", "B", 1).canonical_combination({{"A", Rat(1, 2)}});
    CHECK_THROWS_AS(b.build(), InputError);
  }
  SUBCASE("duplicate names and unknown references") {
    CHECK_THROWS_AS(ArrangementBuilder(0).curve("A", 0, 0).curve("A", 0, 0).build(), InputError);
    CHECK_THROWS_AS(ArrangementBuilder(0).curve("A", 0, 0).meet("A", "Z", 1).build(), InputError);
  }
}

TEST_CASE("rename_curves keeps unmapped names") {
  Arrangement x = four_elliptic();
  Arrangement y = rename_curves(x, {{"T0", "D0"}});
  CHECK(y.find("D0").has_value());
  CHECK_FALSE(y.find("T0").has_value());
  CHECK(y.find("T1").has_value());
}

TEST_CASE("property: pairing is symmetric and bilinear on catalogue surfaces") {
  gen::Gen g(21);
  for (const CatalogEntry& e : catalog().entries()) {
    if (!e.has_surface()) continue;
    Arrangement arr = build_surface(e);
    CAPTURE(e.id);
    for (int i = 0; i < 40; ++i) {
      QDivisor a = random_divisor(g, arr), b = random_divisor(g, arr), c = random_divisor(g, arr);
      Rat s = g.rat(), t = g.rat();
      CHECK(pair(a, b, arr) == pair(b, a, arr));
      CHECK(pair(s * a + t * b, c, arr) == s * pair(a, c, arr) + t * pair(b, c, arr));
    }
  }
}

TEST_CASE("property: blowup preserves adjunction on every catalogue surface") {
  gen::Gen g(22);
  for (const CatalogEntry& e : catalog().entries()) {
    if (!e.has_surface()) continue;
    Arrangement arr = build_surface(e);
    if (!arr.has_canonical()) continue;
    CAPTURE(e.id);
    REQUIRE(adjunction_check(arr).all_pass());
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<BlowupCenter> centers;
      const int n = static_cast<int>(g.integer(1, 3));
      Arrangement cur = arr;
      std::size_t points = 0;
      for (int k = 0; k < n; ++k) {
        BlowupCenter c;
        c.exceptional = "X" + std::to_string(trial) + "_" + std::to_string(k);
        const long long kind = g.integer(0, 2);
        if (kind == 0 && !cur.crossings().empty()) {
          c = center_at_crossing(cur, cur.crossings()[g.index(cur.crossings().size())].name, c.exceptional);
        } else if (kind == 1) {
          c.through = {g.index(cur.size())};
        }
        Arrangement next = blowup(cur, {c});
        CHECK(next.euler_surface() == cur.euler_surface() + 1);
        CHECK(next.canonical_square() == cur.canonical_square() - Rat(1));
        cur = std::move(next);
        ++points;
      }
      CHECK(adjunction_check(cur).all_pass());
      CHECK(cur.canonical_square() == arr.canonical_square() - Rat(static_cast<long long>(points)));
      CHECK(cur.euler_surface() == arr.euler_surface() + static_cast<long long>(points));
    }
  }
}

TEST_CASE("property: derived self-intersections agree with declared ones") {
  for (const CatalogEntry& e : catalog().entries()) {
    if (!e.has_surface()) continue;
    Arrangement arr = build_surface(e);
    if (!arr.has_canonical()) continue;
    CAPTURE(e.id);
    for (CurveId c = 0; c < arr.size(); ++c) CHECK(derive_self_int(arr, c) == arr.curve(c).self_int);
  }
}
