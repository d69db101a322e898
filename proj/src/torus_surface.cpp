#include "orbicheck/torus_surface.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "orbicheck/errors.hpp"

namespace orbicheck {

Arrangement torus_arrangement(const TorusSurface& s) {
  ArrangementBuilder b(0);
  for (const NamedCurve& c : s.curves) {
    if (!(c.curve.ring() == s.ring)) throw InputError("curve '" + c.name + "' on another ring");
    b.curve(c.name, 1, Rat(0));
  }
  std::map<TorusPoint, std::vector<std::string>> through;
  for (std::size_t i = 0; i < s.curves.size(); ++i)
    for (std::size_t j = i + 1; j < s.curves.size(); ++j) {
      if (s.curves[i].curve == s.curves[j].curve)
        throw InputError("curves '" + s.curves[i].name + "' and '" + s.curves[j].name +
                         "' coincide");
      CurveIntersection x = curve_intersection(s.curves[i].curve, s.curves[j].curve);
      if (x.count > 0) b.meet(s.curves[i].name, s.curves[j].name, x.count);
      for (const TorusPoint& p : x.points) {
        auto& names = through[p];
        for (const std::string* n : {&s.curves[i].name, &s.curves[j].name})
          if (std::find(names.begin(), names.end(), *n) == names.end()) names.push_back(*n);
      }
    }
  for (const auto& [p, names] : through) b.crossing("pt" + p.str(), names);
  b.canonical_combination({});
  return b.build();
}

Arrangement blown_up_arrangement(const TorusSurface& s) {
  Arrangement base = torus_arrangement(s);
  std::vector<BlowupCenter> centers;
  std::set<TorusPoint> seen;
  for (const NamedPoint& p : s.blowups) {
    if (!seen.insert(p.point).second)
      throw InputError("point " + p.point.str() + " blown up twice");
    BlowupCenter c{{}, p.name};
    for (CurveId i = 0; i < s.curves.size(); ++i)
      if (s.curves[i].curve.contains(p.point)) c.through.push_back(i);
    centers.push_back(std::move(c));
  }
  return blowup(base, centers);
}

ActionOnArrangement derive_action(const TorusSurface& s, const FiniteGroup& group) {
  const std::size_t nc = s.curves.size();
  const std::size_t n = nc + s.blowups.size();
  auto image_of = [&](const AffineAuto& g, CurveId id) -> CurveId {
    if (id < nc) {
      AbelianCurve img = curve_image(g, s.curves[id].curve);
      for (CurveId k = 0; k < nc; ++k)
        if (s.curves[k].curve == img) return k;
      throw InputError("image of curve '" + s.curves[id].name + "' is not a declared curve");
    }
    TorusPoint img = g.apply(s.blowups[id - nc].point);
    for (std::size_t k = 0; k < s.blowups.size(); ++k)
      if (s.blowups[k].point == img) return nc + k;
    throw InputError("image of blown-up point '" + s.blowups[id - nc].name +
                     "' is not blown up");
  };
  ActionOnArrangement act;
  act.group_order = group.order();
  for (const AffineAuto& g : group.generators()) {
    std::vector<CurveId> perm(n);
    for (CurveId i = 0; i < n; ++i) perm[i] = image_of(g, i);
    act.generators.push_back(std::move(perm));
  }
  // Every element must preserve the configuration, not just the generators.
  for (const AffineAuto& g : group.elements())
    for (CurveId i = 0; i < n; ++i) (void)image_of(g, i);
  act.branch.resize(n);
  for (CurveId i = 0; i < nc; ++i)
    act.branch[i] = static_cast<long long>(reflections_through(group, s.curves[i].curve).size());
  for (std::size_t k = 0; k < s.blowups.size(); ++k)
    act.branch[nc + k] = static_cast<long long>(
        reflections_through_exceptional(group, s.ring, s.blowups[k].point).size());
  return act;
}

std::vector<AbelianCurve> undeclared_reflection_curves(const TorusSurface& s,
                                                       const FiniteGroup& group) {
  std::vector<AbelianCurve> out;
  for (std::size_t i = 1; i < group.order(); ++i) {
    const AffineAuto& g = group.elements()[i];
    if (!g.is_ring_linear(s.ring)) continue;
    for (const AbelianCurve& c : fixed_curves(s.ring, fixed_points(g))) {
      bool declared = std::any_of(s.curves.begin(), s.curves.end(),
                                  [&](const NamedCurve& d) { return d.curve == c; });
      if (!declared && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  }
  return out;
}

}  // namespace orbicheck
