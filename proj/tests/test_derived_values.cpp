#include <doctest.h>

#include "oracles.hpp"

using namespace orbicheck;

TEST_CASE("every derived catalogue value is reproduced by its oracle") {
  Catalog cat = Catalog::embedded();
  std::size_t checked = 0;
  for (const CatalogEntry& e : cat.entries())
    for (const ExpectedValue& v : e.expected) {
      if (v.provenance != Provenance::derived) continue;
      CAPTURE(e.id);
      CAPTURE(v.key);
      CHECK_FALSE(v.oracle.empty());
      oracle::Verdict r = oracle::check_derived(cat, e, v);
      CAPTURE(r.computed);
      CHECK_MESSAGE(r.agrees, e.id << " " << v.key << ": recorded " << v.value << ", oracle "
                                   << r.computed);
      ++checked;
    }
  CHECK(checked >= 60);
}

TEST_CASE("oracles agree with the library on every derived value as well") {
  Catalog cat = Catalog::embedded();
  for (const CatalogEntry& e : cat.entries())
    for (const ExpectedValue& v : e.expected) {
      if (v.provenance != Provenance::derived) continue;
      CAPTURE(e.id);
      CAPTURE(v.key);
      CHECK(evaluate(cat, e, v.key) == v.value);
    }
}
