#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "orbicheck/rational.hpp"

namespace orbicheck {

using CurveId = std::size_t;

struct Curve {
  std::string name;
  long long genus = 0;
  Rat self_int;
  bool orbifold_candidate = true;

  long long euler() const { return 2 - 2 * genus; }
  friend bool operator==(const Curve&, const Curve&) = default;
};

// A point where every incident curve passes once, pairwise transversally.
struct CrossingPoint {
  std::string name;
  std::vector<CurveId> incident;  // sorted, distinct

  bool contains(CurveId c) const;
  friend bool operator==(const CrossingPoint&, const CrossingPoint&) = default;
};

// K as a rational combination of arrangement curves.
struct CanonicalCombination {
  std::vector<std::pair<CurveId, Rat>> terms;
  friend bool operator==(const CanonicalCombination&, const CanonicalCombination&) = default;
};

// K known only numerically: K.C_i for every curve, and K^2.
struct CanonicalPairings {
  std::vector<Rat> with_curve;
  Rat square;
  friend bool operator==(const CanonicalPairings&, const CanonicalPairings&) = default;
};

using CanonicalClass = std::variant<CanonicalCombination, CanonicalPairings>;

// a*K + sum c_i C_i. The K part lets form-(b) canonical classes take part in pairings.
struct QDivisor {
  Rat canonical_multiple;
  std::map<CurveId, Rat> terms;

  static QDivisor canonical(Rat multiple = 1);
  static QDivisor curve(CurveId id, Rat coeff = 1);

  QDivisor& operator+=(const QDivisor& o);
  friend QDivisor operator+(QDivisor a, const QDivisor& b) { return a += b; }
  friend QDivisor operator*(const Rat& s, QDivisor d);
  bool is_zero() const;
};

class Arrangement {
 public:
  // `intersections` is row-major n x n. Throws InputError on any violated invariant.
  Arrangement(long long euler_surface, std::vector<Curve> curves,
              std::vector<long long> intersections, std::vector<CrossingPoint> crossings,
              std::optional<CanonicalClass> canonical);

  std::size_t size() const { return curves_.size(); }
  const Curve& curve(CurveId id) const;
  const std::vector<Curve>& curves() const { return curves_; }
  std::optional<CurveId> find(const std::string& name) const;
  CurveId id_of(const std::string& name) const;  // throws InputError

  // Off-diagonal intersection count; i == j is an error (use pairing).
  long long intersection(CurveId i, CurveId j) const;
  // C_i.C_j including self-intersection.
  Rat pairing(CurveId i, CurveId j) const;

  const std::vector<CrossingPoint>& crossings() const { return crossings_; }
  std::size_t crossings_through(CurveId i, CurveId j) const;
  std::optional<std::size_t> find_crossing(const std::string& name) const;

  long long euler_surface() const { return euler_; }

  bool has_canonical() const { return canonical_.has_value(); }
  const std::optional<CanonicalClass>& canonical() const { return canonical_; }
  // Both throw UnsupportedError when no canonical class is present.
  const Rat& canonical_pairing(CurveId id) const;
  const Rat& canonical_square() const;

  friend bool operator==(const Arrangement& a, const Arrangement& b);

 private:
  void check_index(CurveId id) const;

  long long euler_;
  std::vector<Curve> curves_;
  std::vector<long long> inter_;
  std::vector<CrossingPoint> crossings_;
  std::optional<CanonicalClass> canonical_;
  std::vector<Rat> k_dot_;
  Rat k_sq_;
};

// Name-based construction helper.
class ArrangementBuilder {
 public:
  explicit ArrangementBuilder(long long euler_surface) : euler_(euler_surface) {}
  ArrangementBuilder& curve(std::string name, long long genus, Rat self_int,
                            bool orbifold_candidate = true);
  ArrangementBuilder& meet(const std::string& a, const std::string& b, long long count);
  ArrangementBuilder& crossing(std::string name, const std::vector<std::string>& curves);
  ArrangementBuilder& canonical_combination(const std::vector<std::pair<std::string, Rat>>& terms);
  ArrangementBuilder& canonical_pairings(const std::vector<std::pair<std::string, Rat>>& with_curve,
                                         Rat square);
  Arrangement build() const;

 private:
  CurveId id(const std::string& name) const;

  long long euler_;
  std::vector<Curve> curves_;
  std::vector<std::tuple<std::string, std::string, long long>> meets_;
  std::vector<std::pair<std::string, std::vector<std::string>>> crossings_;
  std::optional<std::vector<std::pair<std::string, Rat>>> combination_;
  std::optional<std::pair<std::vector<std::pair<std::string, Rat>>, Rat>> pairings_;
};

// Bilinear extension of the intersection form.
Rat pair(const QDivisor& d1, const QDivisor& d2, const Arrangement& arr);

struct AdjunctionEntry {
  CurveId curve;
  long long lhs;  // 2g - 2
  Rat canonical_pairing;
  Rat self_int;
  bool pass;
};
struct AdjunctionReport {
  std::vector<AdjunctionEntry> entries;
  bool all_pass() const;
};

// Requires a canonical class (UnsupportedError otherwise).
AdjunctionReport adjunction_check(const Arrangement& arr);

// 2g - 2 - K.C
Rat derive_self_int(const Arrangement& arr, CurveId id);

// One point to blow up. An empty `through` is a point on no declared curve.
struct BlowupCenter {
  std::vector<CurveId> through;
  std::string exceptional;
};

// Centers are blown up in order. A declared crossing with exactly the incident set is consumed.
Arrangement blowup(const Arrangement& arr, const std::vector<BlowupCenter>& points);

// Center for the declared crossing `name`.
BlowupCenter center_at_crossing(const Arrangement& arr, const std::string& crossing,
                                std::string exceptional);

// Renames curves; names not in the map are kept.
Arrangement rename_curves(const Arrangement& arr,
                          const std::map<std::string, std::string>& renames);

}  // namespace orbicheck
