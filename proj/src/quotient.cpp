#include "orbicheck/quotient.hpp"

#include <algorithm>
#include <set>

#include "orbicheck/errors.hpp"

namespace orbicheck {

ActionOnArrangement action_from_cycles(const Arrangement& arr, std::size_t group_order,
                                       const std::vector<Cycles>& generators,
                                       const std::map<std::string, long long>& branch) {
  ActionOnArrangement act;
  act.group_order = group_order;
  for (const Cycles& cycles : generators) {
    std::vector<CurveId> perm(arr.size());
    for (CurveId i = 0; i < arr.size(); ++i) perm[i] = i;
    std::set<CurveId> used;
    for (const auto& cycle : cycles)
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        CurveId from = arr.id_of(cycle[k]);
        if (!used.insert(from).second)
          throw InputError("curve '" + cycle[k] + "' appears twice in one generator");
        perm[from] = arr.id_of(cycle[(k + 1) % cycle.size()]);
      }
    act.generators.push_back(std::move(perm));
  }
  act.branch.assign(arr.size(), 1);
  for (const auto& [name, b] : branch) act.branch[arr.id_of(name)] = b;
  validate_action(arr, act);
  return act;
}

void validate_action(const Arrangement& arr, const ActionOnArrangement& act) {
  const std::size_t n = arr.size();
  if (act.group_order < 1) throw InputError("group order must be positive");
  if (act.branch.size() != n) throw InputError("branch orders must cover every curve");
  for (const auto& perm : act.generators) {
    if (perm.size() != n) throw InputError("generator permutation has the wrong length");
    std::vector<bool> hit(n, false);
    for (CurveId c : perm) {
      if (c >= n || hit[c]) throw InputError("generator is not a permutation of the curves");
      hit[c] = true;
    }
    for (CurveId i = 0; i < n; ++i) {
      if (arr.curve(i).genus != arr.curve(perm[i]).genus ||
          arr.curve(i).self_int != arr.curve(perm[i]).self_int)
        throw InputError("generator sends " + arr.curve(i).name + " to " +
                         arr.curve(perm[i]).name + " but their genus or self-intersection differ");
      for (CurveId j = i + 1; j < n; ++j)
        if (arr.intersection(i, j) != arr.intersection(perm[i], perm[j]))
          throw InputError("generator does not preserve the intersection number of " +
                           arr.curve(i).name + " and " + arr.curve(j).name);
    }
  }
  // Order of the permutation group, by closure.
  std::set<std::vector<CurveId>> seen;
  std::vector<std::vector<CurveId>> queue;
  std::vector<CurveId> id(n);
  for (CurveId i = 0; i < n; ++i) id[i] = i;
  seen.insert(id);
  queue.push_back(id);
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& g : act.generators) {
      std::vector<CurveId> h(n);
      for (CurveId i = 0; i < n; ++i) h[i] = g[queue[k][i]];
      if (seen.insert(h).second) {
        if (seen.size() > act.group_order)
          throw InputError("generators produce more than " + std::to_string(act.group_order) +
                           " distinct permutations");
        queue.push_back(std::move(h));
      }
    }
  if (act.group_order % seen.size() != 0)
    throw InputError("permutation group of order " + std::to_string(seen.size()) +
                     " does not divide the group order " + std::to_string(act.group_order));
  for (CurveId i = 0; i < n; ++i) {
    long long b = act.branch[i];
    if (b < 1 || static_cast<long long>(act.group_order) % b != 0)
      throw InputError("branch order " + std::to_string(b) + " of " + arr.curve(i).name +
                       " must be positive and divide the group order");
    for (const auto& g : act.generators)
      if (act.branch[g[i]] != b)
        throw InputError("branch orders differ along the orbit of " + arr.curve(i).name);
  }
}

QuotientSignature QuotientPlan::signature() const {
  std::vector<Weight> ws;
  for (const QuotientOrbit& o : orbits)
    if (o.quotient_weight) ws.push_back(*o.quotient_weight);
  return make_signature(std::move(ws), expected_quotient_e_orb);
}

QuotientPlan quotient_weights(const Arrangement& arr, const WeightAssignment& w,
                              const ActionOnArrangement& act) {
  validate_action(arr, act);
  const std::size_t n = arr.size();
  std::vector<bool> done(n, false);
  QuotientPlan plan;
  plan.group_order = act.group_order;
  for (CurveId start = 0; start < n; ++start) {
    if (done[start]) continue;
    std::vector<CurveId> orbit{start};
    done[start] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (const auto& g : act.generators) {
        CurveId next = g[orbit[k]];
        if (!done[next]) {
          done[next] = true;
          orbit.push_back(next);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    auto weight_of = [&](CurveId c) -> std::optional<Weight> {
      auto it = w.find(c);
      if (it == w.end()) return std::nullopt;
      return it->second;
    };
    QuotientOrbit o;
    o.curves = orbit;
    o.cover_weight = weight_of(start);
    for (CurveId c : orbit)
      if (weight_of(c) != o.cover_weight)
        throw CheckFailed("orbit of " + arr.curve(start).name + " mixes weights: " +
                          arr.curve(start).name + " has " +
                          (o.cover_weight ? o.cover_weight->str() : std::string("none")) + ", " +
                          arr.curve(c).name + " has " +
                          (weight_of(c) ? weight_of(c)->str() : std::string("none")));
    o.branch = act.branch[start];
    if (o.cover_weight)
      o.quotient_weight = o.cover_weight->times(o.branch);
    else if (o.branch > 1)
      o.quotient_weight = Weight::finite(o.branch);
    plan.orbits.push_back(std::move(o));
  }
  plan.cover_e_orb = c2_orb(arr, w);
  plan.expected_quotient_e_orb = plan.cover_e_orb / Rat(static_cast<long long>(act.group_order));
  return plan;
}

MultiplicativityReport euler_multiplicativity_check(const Rat& cover_e_orb,
                                                    std::size_t group_order,
                                                    const Arrangement& quotient,
                                                    const WeightAssignment& quotient_w) {
  MultiplicativityReport r;
  r.cover_e_orb = cover_e_orb;
  r.group_order = group_order;
  r.quotient_e_orb = c2_orb(quotient, quotient_w);
  r.holds = cover_e_orb == Rat(static_cast<long long>(group_order)) * r.quotient_e_orb;
  return r;
}

std::vector<std::size_t> dm_identify(const QuotientSignature& sig,
                                     const std::vector<DMRecord>& records) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].signature && *records[i].signature == sig) out.push_back(i);
  return out;
}

}  // namespace orbicheck
