#include "orbicheck/arrangement.hpp"

#include <algorithm>
#include <set>

#include "orbicheck/errors.hpp"

namespace orbicheck {

bool CrossingPoint::contains(CurveId c) const {
  return std::binary_search(incident.begin(), incident.end(), c);
}

QDivisor QDivisor::canonical(Rat multiple) {
  QDivisor d;
  d.canonical_multiple = std::move(multiple);
  return d;
}

QDivisor QDivisor::curve(CurveId id, Rat coeff) {
  QDivisor d;
  if (!coeff.is_zero()) d.terms.emplace(id, std::move(coeff));
  return d;
}

QDivisor& QDivisor::operator+=(const QDivisor& o) {
  canonical_multiple += o.canonical_multiple;
  for (const auto& [id, c] : o.terms) {
    Rat& slot = terms[id];
    slot += c;
    if (slot.is_zero()) terms.erase(id);
  }
  return *this;
}

QDivisor operator*(const Rat& s, QDivisor d) {
  if (s.is_zero()) return QDivisor{};
  d.canonical_multiple *= s;
  for (auto& [id, c] : d.terms) c *= s;
  return d;
}

bool QDivisor::is_zero() const { return canonical_multiple.is_zero() && terms.empty(); }

Arrangement::Arrangement(long long euler_surface, std::vector<Curve> curves,
                         std::vector<long long> intersections,
                         std::vector<CrossingPoint> crossings,
                         std::optional<CanonicalClass> canonical)
    : euler_(euler_surface),
      curves_(std::move(curves)),
      inter_(std::move(intersections)),
      crossings_(std::move(crossings)),
      canonical_(std::move(canonical)) {
  const std::size_t n = curves_.size();
  std::set<std::string> names;
  for (const Curve& c : curves_) {
    if (c.name.empty()) throw InputError("curve with empty name");
    if (!names.insert(c.name).second) throw InputError("duplicate curve name '" + c.name + "'");
    if (c.genus < 0) throw InputError("curve '" + c.name + "': negative genus");
    if (!c.self_int.is_integer())
      throw InputError("curve '" + c.name + "': self-intersection must be an integer");
  }
  if (inter_.size() != n * n) throw InputError("intersection table has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (inter_[i * n + i] != 0) throw InputError("intersection table: nonzero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      if (inter_[i * n + j] < 0)
        throw InputError("intersections: negative count for " + curves_[i].name + "." +
                         curves_[j].name);
      if (inter_[i * n + j] != inter_[j * n + i])
        throw InputError("intersections: not symmetric at " + curves_[i].name + "." +
                         curves_[j].name);
    }
  }
  std::set<std::string> point_names;
  for (CrossingPoint& p : crossings_) {
    if (!point_names.insert(p.name).second)
      throw InputError("duplicate crossing name '" + p.name + "'");
    std::sort(p.incident.begin(), p.incident.end());
    if (p.incident.size() < 2)
      throw InputError("crossing '" + p.name + "' needs at least two curves");
    if (std::adjacent_find(p.incident.begin(), p.incident.end()) != p.incident.end())
      throw InputError("crossing '" + p.name + "' lists a curve twice");
    if (p.incident.back() >= n) throw InputError("crossing '" + p.name + "': unknown curve");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (static_cast<long long>(crossings_through(i, j)) > inter_[i * n + j])
        throw InputError("crossings: more points on " + curves_[i].name + " and " +
                         curves_[j].name + " than their intersection number");

  if (!canonical_) return;
  k_dot_.assign(n, Rat(0));
  if (const auto* comb = std::get_if<CanonicalCombination>(&*canonical_)) {
    for (const auto& [id, coeff] : comb->terms) {
      if (id >= n) throw InputError("canonical class: unknown curve");
      for (std::size_t k = 0; k < n; ++k) k_dot_[k] += coeff * pairing(id, k);
    }
    for (const auto& [id, coeff] : comb->terms) k_sq_ += coeff * k_dot_[id];
    for (std::size_t k = 0; k < n; ++k)
      if (!k_dot_[k].is_integer())
        throw InputError("canonical class: K." + curves_[k].name + " = " + k_dot_[k].str() +
                         " is not an integer");
    if (!k_sq_.is_integer()) throw InputError("canonical class: K^2 is not an integer");
  } else {
    const auto& pr = std::get<CanonicalPairings>(*canonical_);
    if (pr.with_curve.size() != n)
      throw InputError("canonical class: need one pairing per curve");
    for (std::size_t k = 0; k < n; ++k)
      if (!pr.with_curve[k].is_integer())
        throw InputError("canonical class: K." + curves_[k].name + " must be an integer");
    if (!pr.square.is_integer()) throw InputError("canonical class: K^2 must be an integer");
    k_dot_ = pr.with_curve;
    k_sq_ = pr.square;
  }
}

void Arrangement::check_index(CurveId id) const {
  if (id >= curves_.size()) throw InputError("unknown curve index " + std::to_string(id));
}

const Curve& Arrangement::curve(CurveId id) const {
  check_index(id);
  return curves_[id];
}

std::optional<CurveId> Arrangement::find(const std::string& name) const {
  for (std::size_t i = 0; i < curves_.size(); ++i)
    if (curves_[i].name == name) return i;
  return std::nullopt;
}

CurveId Arrangement::id_of(const std::string& name) const {
  auto id = find(name);
  if (!id) throw InputError("unknown curve '" + name + "'");
  return *id;
}

long long Arrangement::intersection(CurveId i, CurveId j) const {
  check_index(i);
  check_index(j);
  if (i == j) throw InputError("intersection() takes distinct curves");
  return inter_[i * curves_.size() + j];
}

Rat Arrangement::pairing(CurveId i, CurveId j) const {
  check_index(i);
  check_index(j);
  if (i == j) return curves_[i].self_int;
  return Rat(inter_[i * curves_.size() + j]);
}

std::size_t Arrangement::crossings_through(CurveId i, CurveId j) const {
  return static_cast<std::size_t>(std::count_if(
      crossings_.begin(), crossings_.end(),
      [&](const CrossingPoint& p) { return p.contains(i) && p.contains(j); }));
}

std::optional<std::size_t> Arrangement::find_crossing(const std::string& name) const {
  for (std::size_t i = 0; i < crossings_.size(); ++i)
    if (crossings_[i].name == name) return i;
  return std::nullopt;
}

const Rat& Arrangement::canonical_pairing(CurveId id) const {
  if (!canonical_) throw UnsupportedError("arrangement has no canonical class");
  check_index(id);
  return k_dot_[id];
}

const Rat& Arrangement::canonical_square() const {
  if (!canonical_) throw UnsupportedError("arrangement has no canonical class");
  return k_sq_;
}

bool operator==(const Arrangement& a, const Arrangement& b) {
  return a.euler_ == b.euler_ && a.curves_ == b.curves_ && a.inter_ == b.inter_ &&
         a.crossings_ == b.crossings_ && a.canonical_ == b.canonical_;
}

ArrangementBuilder& ArrangementBuilder::curve(std::string name, long long genus, Rat self_int,
                                              bool orbifold_candidate) {
  curves_.push_back(Curve{std::move(name), genus, std::move(self_int), orbifold_candidate});
  return *this;
}

ArrangementBuilder& ArrangementBuilder::meet(const std::string& a, const std::string& b,
                                             long long count) {
  meets_.emplace_back(a, b, count);
  return *this;
}

ArrangementBuilder& ArrangementBuilder::crossing(std::string name,
                                                 const std::vector<std::string>& curves) {
  crossings_.emplace_back(std::move(name), curves);
  return *this;
}

ArrangementBuilder& ArrangementBuilder::canonical_combination(
    const std::vector<std::pair<std::string, Rat>>& terms) {
  combination_ = terms;
  pairings_.reset();
  return *this;
}

ArrangementBuilder& ArrangementBuilder::canonical_pairings(
    const std::vector<std::pair<std::string, Rat>>& with_curve, Rat square) {
  pairings_.emplace(with_curve, std::move(square));
  combination_.reset();
  return *this;
}

CurveId ArrangementBuilder::id(const std::string& name) const {
  for (std::size_t i = 0; i < curves_.size(); ++i)
    if (curves_[i].name == name) return i;
  throw InputError("unknown curve '" + name + "'");
}

Arrangement ArrangementBuilder::build() const {
  const std::size_t n = curves_.size();
  std::vector<long long> inter(n * n, 0);
  std::set<std::pair<CurveId, CurveId>> seen;
  for (const auto& [a, b, count] : meets_) {
    CurveId i = id(a), j = id(b);
    if (i == j) throw InputError("intersection of '" + a + "' with itself; use self_int");
    if (!seen.insert({std::min(i, j), std::max(i, j)}).second)
      throw InputError("intersection " + a + "." + b + " given twice");
    inter[i * n + j] = inter[j * n + i] = count;
  }
  std::vector<CrossingPoint> points;
  for (const auto& [name, names] : crossings_) {
    CrossingPoint p{name, {}};
    for (const auto& c : names) p.incident.push_back(id(c));
    points.push_back(std::move(p));
  }
  std::optional<CanonicalClass> canonical;
  if (combination_) {
    CanonicalCombination comb;
    for (const auto& [name, coeff] : *combination_) comb.terms.emplace_back(id(name), coeff);
    canonical = comb;
  } else if (pairings_) {
    CanonicalPairings pr{std::vector<Rat>(n, Rat(0)), pairings_->second};
    std::vector<bool> given(n, false);
    for (const auto& [name, value] : pairings_->first) {
      CurveId i = id(name);
      if (given[i]) throw InputError("canonical pairing for '" + name + "' given twice");
      given[i] = true;
      pr.with_curve[i] = value;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!given[i]) throw InputError("canonical pairing missing for '" + curves_[i].name + "'");
    canonical = pr;
  }
  return Arrangement(euler_, curves_, std::move(inter), std::move(points), std::move(canonical));
}

Rat pair(const QDivisor& d1, const QDivisor& d2, const Arrangement& arr) {
  Rat total;
  const Rat& a = d1.canonical_multiple;
  const Rat& b = d2.canonical_multiple;
  if (!a.is_zero() && !b.is_zero()) total += a * b * arr.canonical_square();
  if (!a.is_zero())
    for (const auto& [j, y] : d2.terms) total += a * y * arr.canonical_pairing(j);
  if (!b.is_zero())
    for (const auto& [i, x] : d1.terms) total += b * x * arr.canonical_pairing(i);
  for (const auto& [i, x] : d1.terms)
    for (const auto& [j, y] : d2.terms) total += x * y * arr.pairing(i, j);
  return total;
}

bool AdjunctionReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

AdjunctionReport adjunction_check(const Arrangement& arr) {
  AdjunctionReport report;
  for (CurveId i = 0; i < arr.size(); ++i) {
    const Curve& c = arr.curve(i);
    AdjunctionEntry e{i, 2 * c.genus - 2, arr.canonical_pairing(i), c.self_int, false};
    e.pass = Rat(e.lhs) == e.canonical_pairing + e.self_int;
    report.entries.push_back(std::move(e));
  }
  return report;
}

Rat derive_self_int(const Arrangement& arr, CurveId id) {
  return Rat(2 * arr.curve(id).genus - 2) - arr.canonical_pairing(id);
}

namespace {

Arrangement blowup_one(const Arrangement& arr, const BlowupCenter& center) {
  const std::size_t n = arr.size();
  std::vector<CurveId> through = center.through;
  std::sort(through.begin(), through.end());
  if (std::adjacent_find(through.begin(), through.end()) != through.end())
    throw InputError("blowup center '" + center.exceptional + "' lists a curve twice");
  for (CurveId c : through) (void)arr.curve(c);
  for (std::size_t a = 0; a < through.size(); ++a)
    for (std::size_t b = a + 1; b < through.size(); ++b)
      if (arr.intersection(through[a], through[b]) < 1)
        throw InputError("blowup center '" + center.exceptional + "': curves " +
                         arr.curve(through[a]).name + " and " + arr.curve(through[b]).name +
                         " have no common point left");
  if (arr.find(center.exceptional))
    throw InputError("exceptional curve name '" + center.exceptional + "' already in use");
  auto on = [&](CurveId c) { return std::binary_search(through.begin(), through.end(), c); };

  std::vector<Curve> curves = arr.curves();
  for (CurveId c : through) curves[c].self_int -= 1;
  curves.push_back(Curve{center.exceptional, 0, Rat(-1), true});

  const std::size_t m = n + 1;
  std::vector<long long> inter(m * m, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) inter[i * m + j] = arr.intersection(i, j) - ((on(i) && on(j)) ? 1 : 0);
  for (CurveId c : through) inter[c * m + n] = inter[n * m + c] = 1;

  std::vector<CrossingPoint> crossings;
  bool consumed = through.size() < 2;
  for (const CrossingPoint& p : arr.crossings()) {
    if (!consumed && p.incident == through) {
      consumed = true;
      continue;
    }
    crossings.push_back(p);
  }
  for (CurveId c : through) {
    std::string name = center.exceptional + ":" + arr.curve(c).name;
    crossings.push_back(CrossingPoint{name, {c, n}});
  }

  std::optional<CanonicalClass> canonical;
  if (arr.has_canonical()) {
    if (const auto* comb = std::get_if<CanonicalCombination>(&*arr.canonical())) {
      CanonicalCombination next = *comb;
      Rat e_coeff(1);
      for (const auto& [id, coeff] : comb->terms)
        if (on(id)) e_coeff += coeff;
      next.terms.emplace_back(n, e_coeff);
      canonical = next;
    } else {
      const auto& pr = std::get<CanonicalPairings>(*arr.canonical());
      CanonicalPairings next = pr;
      for (CurveId c : through) next.with_curve[c] += 1;
      next.with_curve.push_back(Rat(-1));
      next.square -= 1;
      canonical = next;
    }
  }
  return Arrangement(arr.euler_surface() + 1, std::move(curves), std::move(inter),
                     std::move(crossings), std::move(canonical));
}

}  // namespace

Arrangement blowup(const Arrangement& arr, const std::vector<BlowupCenter>& points) {
  Arrangement current = arr;
  for (const BlowupCenter& c : points) current = blowup_one(current, c);
  return current;
}

BlowupCenter center_at_crossing(const Arrangement& arr, const std::string& crossing,
                                std::string exceptional) {
  auto idx = arr.find_crossing(crossing);
  if (!idx) throw InputError("unknown crossing '" + crossing + "'");
  return BlowupCenter{arr.crossings()[*idx].incident, std::move(exceptional)};
}

Arrangement rename_curves(const Arrangement& arr,
                          const std::map<std::string, std::string>& renames) {
  for (const auto& [from, to] : renames) (void)arr.id_of(from);
  std::vector<Curve> curves = arr.curves();
  for (Curve& c : curves)
    if (auto it = renames.find(c.name); it != renames.end()) c.name = it->second;
  std::vector<long long> inter(arr.size() * arr.size(), 0);
  for (std::size_t i = 0; i < arr.size(); ++i)
    for (std::size_t j = 0; j < arr.size(); ++j)
      if (i != j) inter[i * arr.size() + j] = arr.intersection(i, j);
  return Arrangement(arr.euler_surface(), std::move(curves), std::move(inter), arr.crossings(),
                     arr.canonical());
}

}  // namespace orbicheck
