#include "orbicheck/bmy.hpp"

#include "orbicheck/errors.hpp"

namespace orbicheck {

const std::string_view kDeclaredCurvesCaveat =
    "ampleness checked against the declared curves only; curves outside the arrangement are not "
    "examined";

Weight Weight::finite(long long r) {
  if (r < 2) throw InputError("orbifold weight must be at least 2, got " + std::to_string(r));
  return Weight(r);
}

Weight Weight::infinite() { return Weight(0); }

Weight Weight::parse(std::string_view text) {
  if (text == "inf") return infinite();
  Rat r = Rat::parse(text);
  if (!r.is_integer()) throw InputError("orbifold weight must be an integer or \"inf\"");
  return finite(r.to_int());
}

long long Weight::order() const {
  if (is_infinite()) throw std::logic_error("order() of an infinite weight");
  return order_;
}

Rat Weight::coefficient() const {
  if (is_infinite()) return Rat(1);
  return Rat(1) - Rat(1, order_);
}

std::string Weight::str() const { return is_infinite() ? "inf" : std::to_string(order_); }

Weight Weight::times(long long b) const {
  if (b < 1) throw InputError("branch order must be positive");
  if (is_infinite()) return *this;
  return Weight(order_ * b);
}

bool operator<(const Weight& a, const Weight& b) {
  if (a.is_infinite()) return false;
  if (b.is_infinite()) return true;
  return a.order_ < b.order_;
}

WeightAssignment weights_by_name(const Arrangement& arr,
                                 const std::vector<std::pair<std::string, Weight>>& named) {
  WeightAssignment w;
  for (const auto& [name, weight] : named)
    if (!w.emplace(arr.id_of(name), weight).second)
      throw InputError("weight for '" + name + "' given twice");
  return w;
}

namespace {

void check_support(const Arrangement& arr, const WeightAssignment& w) {
  for (const auto& [id, weight] : w)
    if (id >= arr.size()) throw InputError("weight on unknown curve index " + std::to_string(id));
}

bool weighted(const WeightAssignment& w, CurveId c) { return w.count(c) != 0; }

}  // namespace

QDivisor boundary_divisor(const Arrangement& arr, const WeightAssignment& w) {
  check_support(arr, w);
  QDivisor d;
  for (const auto& [id, weight] : w) d += QDivisor::curve(id, weight.coefficient());
  return d;
}

QDivisor log_canonical(const Arrangement& arr, const WeightAssignment& w) {
  return QDivisor::canonical() + boundary_divisor(arr, w);
}

Rat c1_sq(const Arrangement& arr, const WeightAssignment& w) {
  QDivisor l = log_canonical(arr, w);
  return pair(l, l, arr);
}

Rat c2_orb(const Arrangement& arr, const WeightAssignment& w) {
  check_support(arr, w);
  for (auto it = w.begin(); it != w.end(); ++it)
    for (auto jt = std::next(it); jt != w.end(); ++jt) {
      long long meet = arr.intersection(it->first, jt->first);
      if (static_cast<long long>(arr.crossings_through(it->first, jt->first)) != meet)
        throw InputError("weighted curves " + arr.curve(it->first).name + " and " +
                         arr.curve(jt->first).name + " meet in " + std::to_string(meet) +
                         " points but not all are declared crossings");
    }

  std::map<CurveId, long long> removed;
  Rat point_terms;
  for (const CrossingPoint& p : arr.crossings()) {
    std::vector<CurveId> hit;
    for (CurveId c : p.incident)
      if (weighted(w, c)) hit.push_back(c);
    if (hit.size() < 2) continue;
    if (hit.size() > 2)
      throw UnsupportedError("crossing '" + p.name + "' lies on more than two weighted curves");
    const Weight& a = w.at(hit[0]);
    const Weight& b = w.at(hit[1]);
    if (a.is_infinite() && b.is_infinite())
      throw UnsupportedError("crossing '" + p.name + "' joins two cusp (infinite-weight) curves");
    if (a.is_infinite() || b.is_infinite())
      point_terms += Rat(1);
    else
      point_terms += Rat(1) - Rat(1, a.order() * b.order());
    ++removed[hit[0]];
    ++removed[hit[1]];
  }

  Rat total(arr.euler_surface());
  for (const auto& [id, weight] : w) {
    long long e_open = arr.curve(id).euler() - removed[id];
    total -= weight.coefficient() * Rat(e_open);
  }
  return total - point_terms;
}

Rat c2_orb_disjoint(const Arrangement& arr, const WeightAssignment& w) {
  check_support(arr, w);
  for (auto it = w.begin(); it != w.end(); ++it)
    for (auto jt = std::next(it); jt != w.end(); ++jt)
      if (arr.intersection(it->first, jt->first) != 0)
        throw InputError("weighted curves " + arr.curve(it->first).name + " and " +
                         arr.curve(jt->first).name + " meet; the disjoint formula does not apply");
  Rat total(arr.euler_surface());
  for (const auto& [id, weight] : w) total -= weight.coefficient() * Rat(arr.curve(id).euler());
  return total;
}

NakaiCertificate nakai_check(const Arrangement& arr, const WeightAssignment& w) {
  NakaiCertificate cert;
  QDivisor l = log_canonical(arr, w);
  cert.L_sq = pair(l, l, arr);
  cert.square_positive = cert.L_sq.sign() > 0;
  for (CurveId c = 0; c < arr.size(); ++c) {
    Rat v = pair(l, QDivisor::curve(c), arr);
    if (v.sign() <= 0 && !cert.witness) cert.witness = c;
    cert.pairings.emplace_back(c, std::move(v));
  }
  cert.pass = cert.square_positive && !cert.witness;
  cert.caveat = std::string(kDeclaredCurvesCaveat);
  return cert;
}

PairReport verify_pair(const Arrangement& arr, const WeightAssignment& w) {
  PairReport r;
  r.c1_sq = c1_sq(arr, w);
  r.c2 = c2_orb(arr, w);
  r.bmy_equal = r.c1_sq == Rat(3) * r.c2;
  r.nakai = nakai_check(arr, w);
  return r;
}

}  // namespace orbicheck
