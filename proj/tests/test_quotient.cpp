#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "gen.hpp"
#include "oracles.hpp"
#include "orbicheck/catalog.hpp"
#include "orbicheck/errors.hpp"
#include "orbicheck/quotient.hpp"

using namespace orbicheck;

namespace {

const Catalog& catalog() {
  static const Catalog cat = Catalog::embedded();
  return cat;
}

struct Loaded {
  Arrangement arr;
  WeightAssignment w;
  ActionOnArrangement act;
};

Loaded load(const std::string& id, const std::string& action) {
  const CatalogEntry& e = catalog().get(id);
  const ActionDecl& a = e.action(action);
  Arrangement arr = build_surface(e);
  WeightAssignment w = build_weighting(e, arr, a.weighting);
  ActionOnArrangement act = build_action(e, arr, a);
  return {std::move(arr), std::move(w), std::move(act)};
}

std::vector<std::vector<CurveId>> orbit_sets(const QuotientPlan& p) {
  std::vector<std::vector<CurveId>> out;
  for (const QuotientOrbit& o : p.orbits) out.push_back(o.curves);
  std::sort(out.begin(), out.end());
  return out;
}

// Every declared action in the catalogue.
std::vector<std::pair<const CatalogEntry*, const ActionDecl*>> all_actions() {
  std::vector<std::pair<const CatalogEntry*, const ActionDecl*>> out;
  for (const CatalogEntry& e : catalog().entries())
    for (const ActionDecl& a : e.actions) out.emplace_back(&e, &a);
  return out;
}

std::vector<CurveId> compose(const std::vector<CurveId>& f, const std::vector<CurveId>& g) {
  std::vector<CurveId> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f[g[i]];
  return out;
}

}  // namespace

TEST_CASE("genus-2 pair: all quotient weights are 5") {
  QuotientReport r = run_quotient(catalog(), catalog().get("wiman-g2"), "g25");
  CHECK(weight_multiset(r.plan.signature().weights) == "{5,5,5,5,5,5,5,5,5,5}");
  CHECK(r.plan.cover_e_orb == Rat(15));
  CHECK(r.plan.expected_quotient_e_orb == Rat(3, 5));
  REQUIRE(r.multiplicativity.has_value());
  CHECK(r.multiplicativity->holds);
  CHECK(r.multiplicativity->quotient_e_orb == Rat(3, 5));
  CHECK(r.weights_match);
  REQUIRE(r.dm_matches.size() == 1);
  CHECK(catalog().dm_records()[r.dm_matches[0]].weights.str() == "(2,2,2,2,2)/5");
}

TEST_CASE("the (Z/5)^2 action has a single orbit on the D_j") {
  Loaded l = load("wiman-g2", "g25");
  QuotientPlan p = quotient_weights(l.arr, l.w, l.act);
  std::vector<CurveId> d;
  for (const char* n : {"D0", "D1", "D2", "D3", "D4"}) d.push_back(l.arr.id_of(n));
  std::sort(d.begin(), d.end());
  std::size_t hits = 0;
  for (const QuotientOrbit& o : p.orbits) {
    if (o.curves == d) {
      ++hits;
      CHECK(o.branch == 1);
      CHECK(o.quotient_weight == Weight::finite(5));
    }
    // Curves off the boundary become weight-5 curves through the branch order.
    if (!o.cover_weight && o.branch == 5) CHECK(o.quotient_weight == Weight::finite(5));
  }
  CHECK(hits == 1);
  // Ten orbifold curves downstairs: the D-orbit and nine singleton branch curves.
  CHECK(p.signature().weights.size() == 10);
}

TEST_CASE("Eisenstein pair: weights 3 with branch orders 1, 3 and 6 give {3,9,18}") {
  QuotientReport r = run_quotient(catalog(), catalog().get("hirzebruch-eisenstein"), "F");
  CHECK(weight_multiset(r.plan.signature().weights) == "{3,9,18}");
  CHECK(r.plan.expected_quotient_e_orb == Rat(13, 648));
  CHECK(r.plan.cover_e_orb == Rat(13, 9));
  REQUIRE(r.multiplicativity.has_value());
  CHECK(r.multiplicativity->holds);
  CHECK(r.weights_match);
  Loaded l = load("hirzebruch-eisenstein", "F");
  QuotientPlan p = quotient_weights(l.arr, l.w, l.act);
  for (const QuotientOrbit& o : p.orbits) {
    if (o.cover_weight) CHECK(*o.quotient_weight == o.cover_weight->times(o.branch));
    if (std::find(o.curves.begin(), o.curves.end(), l.arr.id_of("L")) != o.curves.end())
      CHECK(o.quotient_weight == Weight::finite(18));
  }
}

TEST_CASE("Gaussian pair and its weight-3 variant") {
  QuotientReport r = run_quotient(catalog(), catalog().get("gaussian"), "f16");
  CHECK(weight_multiset(r.plan.signature().weights) == "{4,4,4,4,4,4,8,8,8,8}");
  CHECK(r.plan.expected_quotient_e_orb == Rat(9, 16));
  CHECK(r.multiplicativity->holds);
  CHECK(r.weights_match);
  REQUIRE(r.dm_matches.size() == 1);
  CHECK(catalog().dm_records()[r.dm_matches[0]].weights.str() == "(4,3,3,3,3)/8");

  QuotientReport v = run_quotient(catalog(), catalog().get("gaussian-weight3-variant"), "f16");
  CHECK(weight_multiset(v.plan.signature().weights) == "{3,4,4,4,4,6,6,6,12,12}");
  CHECK(v.plan.expected_quotient_e_orb == Rat(13, 24));
  CHECK(v.multiplicativity->holds);
  REQUIRE(v.dm_matches.size() == 1);
  CHECK(catalog().dm_records()[v.dm_matches[0]].weights.str() == "(6,5,5,4,4)/12");
}

TEST_CASE("an orbit with mixed weights is a failed check") {
  Loaded l = load("wiman-g2", "g25");
  l.w.at(l.arr.id_of("D2")) = Weight::finite(3);
  CHECK_THROWS_AS(quotient_weights(l.arr, l.w, l.act), CheckFailed);
  l.w.erase(l.arr.id_of("D2"));
  CHECK_THROWS_AS(quotient_weights(l.arr, l.w, l.act), CheckFailed);
}

TEST_CASE("invalid actions are input errors") {
  Loaded l = load("wiman-g2", "g25");
  SUBCASE("branch order not dividing the group order") {
    l.act.branch[l.arr.id_of("E0")] = 3;
    CHECK_THROWS_AS(validate_action(l.arr, l.act), InputError);
  }
  SUBCASE("generator not preserving intersections") {
    std::vector<CurveId> swap(l.arr.size());
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[l.arr.id_of("E0")], swap[l.arr.id_of("D0")]);
    l.act.generators.push_back(swap);
    CHECK_THROWS_AS(validate_action(l.arr, l.act), InputError);
  }
  SUBCASE("declared order not divisible by the permutation group order") {
    // Both generators act on the D_j through one 5-cycle, so the permutation group has order 5.
    l.act.branch.assign(l.arr.size(), 1);
    l.act.group_order = 5;
    CHECK_NOTHROW(validate_action(l.arr, l.act));
    l.act.group_order = 2;
    CHECK_THROWS_AS(validate_action(l.arr, l.act), InputError);
  }
  SUBCASE("cycle notation naming a curve twice") {
    CHECK_THROWS_AS(action_from_cycles(l.arr, 5, {{{"D0", "D1", "D0"}}}, {}), InputError);
  }
}

TEST_CASE("trivial action leaves the weighting unchanged") {
  Loaded l = load("wiman-g2", "g25");
  ActionOnArrangement trivial{1, {}, std::vector<long long>(l.arr.size(), 1)};
  QuotientPlan p = quotient_weights(l.arr, l.w, trivial);
  CHECK(p.orbits.size() == l.arr.size());
  CHECK(p.expected_quotient_e_orb == p.cover_e_orb);
  std::vector<Weight> cover;
  for (const auto& [c, w] : l.w) cover.push_back(w);
  CHECK(weight_multiset(p.signature().weights) == weight_multiset(cover));
}

TEST_CASE("multiplicativity detects a wrong group order") {
  const CatalogEntry& q = catalog().get("wiman-quotient-fig2");
  Arrangement qarr = build_surface(q);
  WeightAssignment qw = build_weighting(q, qarr, "compact");
  CHECK(euler_multiplicativity_check(Rat(15), 25, qarr, qw).holds);
  MultiplicativityReport bad = euler_multiplicativity_check(Rat(15), 24, qarr, qw);
  CHECK_FALSE(bad.holds);
  CHECK(bad.quotient_e_orb == Rat(3, 5));
}

TEST_CASE("dm_identify reports every matching record") {
  std::vector<DMRecord> records = catalog().dm_records();
  QuotientSignature sig = *records[0].signature;
  CHECK(dm_identify(sig, records) == std::vector<std::size_t>{0});
  records.push_back(records[0]);
  CHECK(dm_identify(sig, records) == std::vector<std::size_t>{0, records.size() - 1});
  CHECK(dm_identify(make_signature({Weight::finite(7)}, Rat(1)), records).empty());
  // Same weights with a different Euler number do not match.
  CHECK(dm_identify(make_signature(sig.weights, Rat(1)), records).empty());
}

TEST_CASE("property: orbits do not depend on generator order, repetition or added products") {
  gen::Gen g(61);
  for (auto [e, a] : all_actions()) {
    CAPTURE(e->id);
    CAPTURE(a->name);
    Loaded l = load(e->id, a->name);
    QuotientPlan base = quotient_weights(l.arr, l.w, l.act);
    for (int trial = 0; trial < 10; ++trial) {
      ActionOnArrangement act = l.act;
      if (act.generators.size() >= 2) {
        std::size_t i = g.index(act.generators.size()), j = g.index(act.generators.size());
        act.generators.push_back(compose(act.generators[i], act.generators[j]));
      }
      if (!act.generators.empty()) act.generators.push_back(act.generators[g.index(act.generators.size())]);
      g.shuffle(act.generators);
      QuotientPlan p = quotient_weights(l.arr, l.w, act);
      CHECK(orbit_sets(p) == orbit_sets(base));
      CHECK(p.signature() == base.signature());
    }
  }
}

TEST_CASE("property: quotient Euler number is the stratified cover value over the group order") {
  for (auto [e, a] : all_actions()) {
    CAPTURE(e->id);
    Loaded l = load(e->id, a->name);
    QuotientPlan p = quotient_weights(l.arr, l.w, l.act);
    Rat cover = oracle::stratified_e_orb(l.arr, l.w);
    CHECK(p.cover_e_orb == cover);
    CHECK(p.expected_quotient_e_orb * Rat(static_cast<long long>(l.act.group_order)) == cover);
    // Orbit sizes divide the group order and sum to the curve count.
    std::size_t total = 0;
    for (const QuotientOrbit& o : p.orbits) {
      CHECK(l.act.group_order % o.curves.size() == 0);
      CHECK(l.act.group_order % static_cast<std::size_t>(o.branch) == 0);
      total += o.curves.size();
    }
    CHECK(total == l.arr.size());
  }
}
