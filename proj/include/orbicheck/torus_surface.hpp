#pragma once

#include <string>
#include <vector>

#include "orbicheck/arrangement.hpp"
#include "orbicheck/quotient.hpp"
#include "orbicheck/torus.hpp"

namespace orbicheck {

struct NamedCurve {
  std::string name;
  AbelianCurve curve;
};

// A blown-up point; `name` is the exceptional curve.
struct NamedPoint {
  std::string name;
  TorusPoint point;
};

// Lines on (C/L)^2 for L the ring, with finitely many points blown up.
struct TorusSurface {
  QuadraticRing ring{RingKind::gaussian};
  std::vector<NamedCurve> curves;
  std::vector<NamedPoint> blowups;
};

// Genus-1 curves of self-intersection 0, K = 0, e = 0; every point where two or more curves
// meet becomes a crossing. Intersection numbers come from curve_intersection.
Arrangement torus_arrangement(const TorusSurface& s);
Arrangement blown_up_arrangement(const TorusSurface& s);

// Action of `group` on blown_up_arrangement(s): generator permutations from curve_image and
// point images, branch orders from pointwise stabilizers. InputError if the declared curves or
// blown-up points are not preserved.
ActionOnArrangement derive_action(const TorusSurface& s, const FiniteGroup& group);

// Curves fixed pointwise by some non-identity element that are not declared on `s`.
std::vector<AbelianCurve> undeclared_reflection_curves(const TorusSurface& s,
                                                       const FiniteGroup& group);

}  // namespace orbicheck
