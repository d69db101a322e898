#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "orbicheck/catalog.hpp"
#include "orbicheck/errors.hpp"

namespace orbicheck {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

template <class T>
std::string join(const std::vector<T>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    if constexpr (std::is_same_v<T, std::string>)
      s += v[i];
    else
      s += std::to_string(v[i]);
  }
  return s;
}

void arity(const std::string& name, const std::vector<std::string>& args, std::size_t n) {
  if (args.size() != n)
    throw InputError("key '" + name + "' takes " + std::to_string(n) + " argument(s), got " +
                     std::to_string(args.size()));
}

// Torus selected by an optional "name:" prefix.
std::pair<const TorusDecl*, std::string> torus_arg(const CatalogEntry& e, const std::string& arg) {
  std::string name, rest = arg;
  auto colon = arg.find(':');
  if (colon != std::string::npos) {
    name = trim(arg.substr(0, colon));
    rest = trim(arg.substr(colon + 1));
  }
  const TorusDecl* t = e.find_torus(name);
  if (!t)
    throw InputError(name.empty() ? "entry '" + e.id + "' has several tori; prefix the argument"
                                  : "entry '" + e.id + "' has no torus '" + name + "'");
  return {t, rest};
}

const GroupDecl& group_decl(const TorusDecl& t, const std::string& name) {
  for (const GroupDecl& g : t.groups)
    if (g.name == name) return g;
  throw InputError("no group '" + name + "'");
}

std::size_t auto_order(const AffineAuto& f) {
  auto r = group_closure({f}, 100000);
  if (std::holds_alternative<Overflow>(r)) throw InputError("element has order above 100000");
  return std::get<FiniteGroup>(r).order();
}

const TorusCurveDecl& torus_curve(const TorusDecl& t, const std::string& name) {
  for (const TorusCurveDecl& c : t.curves)
    if (c.name == name) return c;
  throw InputError("no torus curve '" + name + "'");
}

// 1-based cycle notation, fixed points omitted, "()" for the identity.
std::string cycle_string(const std::vector<std::size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::string s;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == i) continue;
    s += "(";
    for (std::size_t k = i; !seen[k]; k = perm[k]) {
      if (k != i) s += " ";
      s += std::to_string(k + 1);
      seen[k] = true;
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

std::string fixed_description(const FixedLocus& f) {
  if (f.empty()) return "none";
  const std::size_t n = f.component_count();
  if (f.real_dimension() == 0) return std::to_string(n) + (n == 1 ? " point" : " points");
  return std::to_string(n) + (n == 1 ? " component" : " components") + " of real dimension " +
         std::to_string(f.real_dimension());
}

std::vector<TorusPoint> declared_points(const TorusDecl& t) {
  QuadraticRing ring = torus_ring(t);
  std::vector<TorusPoint> out;
  const auto& src = t.points.empty() ? t.blowups : t.points;
  for (const TorusPointDecl& p : src)
    out.push_back(TorusPoint::from_pair(ring.parse_rational(p.z), ring.parse_rational(p.w)));
  return out;
}

std::optional<std::string> eval_torus(const CatalogEntry& e, const std::string& name,
                                      const std::vector<std::string>& args) {
  if (name == "group_order" || name == "center_order" || name == "central_quotient_order" ||
      name == "orbit_sizes" || name == "stabilizer_orders" || name == "free") {
    arity(name, args, 1);
    auto [t, gname] = torus_arg(e, args[0]);
    FiniteGroup g = build_group(*t, group_decl(*t, gname));
    if (name == "group_order") return std::to_string(g.order());
    if (name == "center_order") return std::to_string(g.center().size());
    if (name == "central_quotient_order") return std::to_string(g.order() / g.center().size());
    if (name == "free") {
      for (std::size_t i = 1; i < g.order(); ++i)
        if (!fixed_points(g.elements()[i]).empty()) return std::string("no");
      return std::string("yes");
    }
    std::vector<TorusPoint> pts = declared_points(*t);
    OrbitData d = orbit_stabilizer(g, pts, [](const AffineAuto& f, const TorusPoint& p) {
      return f.apply(p);
    });
    std::vector<std::size_t> sizes;
    if (name == "orbit_sizes") {
      for (const auto& o : d.orbits) sizes.push_back(o.size());
      std::sort(sizes.begin(), sizes.end());
      return "{" + join(sizes, ",") + "}";
    }
    for (const auto& s : d.stabilizers) sizes.push_back(s.size());
    return join(sizes, ",");
  }
  if (name == "element_order" || name == "fixed" || name == "fixed_det" || name == "fixed_lines" ||
      name == "permutation" || name == "matrix") {
    arity(name, args, 1);
    auto [t, expr] = torus_arg(e, args[0]);
    AffineAuto f = eval_auto_expr(*t, expr);
    if (name == "element_order") return std::to_string(auto_order(f));
    if (name == "matrix") return f.str();
    if (name == "permutation") {
      TorusSurface s = build_torus_surface(*t);
      std::vector<std::size_t> perm;
      for (const NamedCurve& c : s.curves) {
        AbelianCurve img = curve_image(f, c.curve);
        std::size_t k = 0;
        while (k < s.curves.size() && !(s.curves[k].curve == img)) ++k;
        if (k == s.curves.size())
          throw InputError("image of '" + c.name + "' is not a declared curve");
        perm.push_back(k);
      }
      return cycle_string(perm);
    }
    FixedLocus locus = fixed_points(f);
    if (name == "fixed") return fixed_description(locus);
    if (name == "fixed_det") return std::to_string(locus.det < 0 ? -locus.det : locus.det);
    std::vector<std::string> lines;
    for (const AbelianCurve& c : fixed_curves(torus_ring(*t), locus)) lines.push_back(c.str());
    return lines.empty() ? std::string("none") : join(lines, "; ");
  }
  if (name == "equals") {
    arity(name, args, 2);
    auto [t, expr] = torus_arg(e, args[0]);
    std::string rhs = args[1];
    if (rhs.find(':') != std::string::npos) rhs = torus_arg(e, rhs).second;
    return std::string(eval_auto_expr(*t, expr) == eval_auto_expr(*t, rhs) ? "true" : "false");
  }
  if (name == "image_meets" || name == "curve_image") {
    arity(name, args, 2);
    auto [t, expr] = torus_arg(e, args[0]);
    TorusSurface s = build_torus_surface(*t);
    const std::string cname = trim(args[1]);
    torus_curve(*t, cname);
    const AbelianCurve* c = nullptr;
    for (const NamedCurve& nc : s.curves)
      if (nc.name == cname) c = &nc.curve;
    AbelianCurve img = curve_image(eval_auto_expr(*t, expr), *c);
    if (name == "curve_image") {
      for (const NamedCurve& nc : s.curves)
        if (nc.curve == img) return nc.name;
      return img.str();
    }
    if (img == *c) throw InputError("image of '" + cname + "' is the curve itself");
    return std::to_string(curve_intersection(img, *c).count);
  }
  return std::nullopt;
}

struct TriangleData {
  Presentation pres;
  std::array<long long, 3> shape;
  Rat chi;
  std::vector<EllipticGenerator> elliptic;
};

TriangleData triangle_data(const CatalogEntry& e, const std::string& pname) {
  Presentation p = Presentation::parse(e.presentation_text(pname));
  auto shape = triangle_shape(p);
  if (!shape) throw UnsupportedError("presentation '" + pname + "' is not a triangle group");
  Rat chi = triangle_chi((*shape)[0], (*shape)[1], (*shape)[2]);
  auto ell = triangle_elliptics(p, (*shape)[0], (*shape)[1], (*shape)[2]);
  return {std::move(p), *shape, chi, std::move(ell)};
}

CosetTable subgroup_table(const Presentation& p, const SubgroupDecl& s, std::size_t max_cosets) {
  std::vector<Word> words;
  for (const std::string& w : s.words) words.push_back(p.parse_word(w));
  auto r = todd_coxeter(p, words, max_cosets);
  if (auto* o = std::get_if<Overflow>(&r))
    throw InputError("coset enumeration for '" + s.name + "' overflowed at " +
                     std::to_string(o->limit) + " cosets; retry with --max-cosets");
  return std::get<CosetTable>(std::move(r));
}

std::optional<std::string> eval_group(const CatalogEntry& e, const std::string& name,
                                      const std::vector<std::string>& args) {
  constexpr std::size_t kMaxCosets = 100000;
  if (name == "group_chi") {
    arity(name, args, 1);
    return triangle_data(e, args[0]).chi.str();
  }
  if (name == "index" || name == "signature" || name == "chi" || name == "subgroup_genus" ||
      name == "cycle_types") {
    arity(name, args, 1);
    const SubgroupDecl& s = e.subgroup(args[0]);
    TriangleData d = triangle_data(e, s.presentation);
    CosetTable t = subgroup_table(d.pres, s, kMaxCosets);
    if (name == "index") return std::to_string(t.index);
    if (name == "cycle_types") {
      std::vector<std::string> parts;
      for (const EllipticGenerator& g : d.elliptic)
        parts.push_back(d.pres.format(g.word) + ":" + join(cycle_type(t.permutation(g.word)), ","));
      return join(parts, " ");
    }
    OrbifoldSignature sig = subgroup_signature(t, d.elliptic, d.chi);
    if (name == "signature") return sig.str();
    if (name == "subgroup_genus") return std::to_string(sig.genus);
    return sig.chi.str();
  }
  if (name == "search") {
    arity(name, args, 1);
    const SubgroupDecl& s = e.subgroup(args[0]);
    if (!s.search || !s.target || !s.target_index)
      throw InputError("subgroup '" + s.name + "' has no search parameters");
    TriangleData d = triangle_data(e, s.presentation);
    WordSearchParams prm;
    prm.max_length = s.search->max_length;
    prm.max_words = s.search->max_words;
    prm.max_cosets = s.search->max_cosets;
    prm.target_index = *s.target_index;
    prm.target = parse_orbifold_signature(*s.target);
    prm.elliptic = d.elliptic;
    prm.group_chi = d.chi;
    auto r = search_subgroup_words(d.pres, prm);
    if (!r) return std::string("not found");
    std::vector<std::string> ws;
    for (const Word& w : r->words) ws.push_back(d.pres.format(w));
    return join(ws, ", ");
  }
  if (name == "intersection_index") {
    arity(name, args, 2);
    const SubgroupDecl& s1 = e.subgroup(args[0]);
    const SubgroupDecl& s2 = e.subgroup(args[1]);
    if (s1.presentation != s2.presentation)
      throw InputError("subgroups of different presentations");
    Presentation p = Presentation::parse(e.presentation_text(s1.presentation));
    return std::to_string(
        intersection_index(subgroup_table(p, s1, kMaxCosets), subgroup_table(p, s2, kMaxCosets)));
  }
  if (name == "etale_genus") {
    arity(name, args, 2);
    return std::to_string(etale_cover_genus(Rat::parse(args[0]).to_int(), Rat::parse(args[1]).to_int()));
  }
  return std::nullopt;
}

std::optional<std::string> eval_dm(const Catalog& cat, const std::string& name,
                                   const std::vector<std::string>& args) {
  if (name != "valid" && name != "int_class" && name != "flag" && name != "sum") return std::nullopt;
  arity(name, args, 1);
  DMWeights w = DMWeights::parse(args[0]);
  if (name == "sum") return validate(w).sum.str();
  if (name == "valid") return std::string(validate(w).valid ? "valid" : "invalid");
  if (name == "int_class") return to_string(int_condition(w));
  for (const DMRecord& r : cat.dm_records())
    if (r.weights == w) return to_string(r.flag);
  return std::string("unknown");
}

std::string local_group_max(const Arrangement& arr, const WeightAssignment& w) {
  long long best = 1;
  bool inf = false;
  for (const CrossingPoint& p : arr.crossings()) {
    long long prod = 1;
    int weighted = 0;
    bool has_inf = false;
    for (CurveId c : p.incident) {
      auto it = w.find(c);
      if (it == w.end()) continue;
      ++weighted;
      if (it->second.is_infinite())
        has_inf = true;
      else
        prod *= it->second.order();
    }
    if (weighted < 2) continue;
    if (has_inf)
      inf = true;
    else
      best = std::max(best, prod);
  }
  return inf ? "inf" : std::to_string(best);
}

std::optional<std::string> eval_surface(const Catalog& cat, const CatalogEntry& e,
                                        const std::string& name,
                                        const std::vector<std::string>& args) {
  static const std::set<std::string> kSurfaceKeys = {
      "euler", "K_sq", "K.C", "self_int", "genus", "adjunction", "curve_count", "crossing_count",
      "intersection", "c1_sq", "c2", "c2_disjoint", "bmy", "nakai", "L_sq", "L.C",
      "max_local_group"};
  static const std::set<std::string> kActionKeys = {
      "quotient_weights", "quotient_e_orb", "multiplicativity", "dm", "dm_flag", "branch",
      "orbit_count", "quotient_match"};
  if (kActionKeys.count(name)) {
    if (args.empty()) throw InputError("key '" + name + "' needs an action");
    const ActionDecl& a = e.action(args[0]);
    if (name == "branch") {
      arity(name, args, 2);
      Arrangement arr = build_surface(e);
      ActionOnArrangement act = build_action(e, arr, a);
      return std::to_string(act.branch[arr.id_of(args[1])]);
    }
    arity(name, args, 1);
    QuotientReport r = run_quotient(cat, e, a.name);
    if (name == "orbit_count") return std::to_string(r.plan.orbits.size());
    if (name == "quotient_weights") return weight_multiset(r.plan.signature().weights);
    if (name == "quotient_e_orb") return r.plan.expected_quotient_e_orb.str();
    if (name == "quotient_match") return std::string(r.weights_match ? "match" : "mismatch");
    if (name == "multiplicativity") {
      if (!r.multiplicativity) return std::string("no quotient");
      return std::string(r.multiplicativity->holds ? "holds" : "fails");
    }
    std::vector<DMRecord> recs = cat.dm_records();
    if (r.dm_matches.empty()) return std::string("none");
    std::vector<std::string> out;
    for (std::size_t i : r.dm_matches)
      out.push_back(name == "dm" ? recs[i].weights.str() : to_string(recs[i].flag));
    return join(out, "; ");
  }
  if (!kSurfaceKeys.count(name)) return std::nullopt;
  Arrangement arr = build_surface(e);
  if (name == "euler") return std::to_string(arr.euler_surface());
  if (name == "K_sq") return arr.canonical_square().str();
  if (name == "curve_count") return std::to_string(arr.size());
  if (name == "crossing_count") return std::to_string(arr.crossings().size());
  if (name == "adjunction") return pass_fail(adjunction_check(arr).all_pass());
  if (name == "K.C" || name == "self_int" || name == "genus") {
    arity(name, args, 1);
    CurveId id = arr.id_of(args[0]);
    if (name == "K.C") return arr.canonical_pairing(id).str();
    if (name == "genus") return std::to_string(arr.curve(id).genus);
    return arr.curve(id).self_int.str();
  }
  if (name == "intersection") {
    arity(name, args, 2);
    return arr.pairing(arr.id_of(args[0]), arr.id_of(args[1])).str();
  }
  if (args.empty()) throw InputError("key '" + name + "' needs a weighting");
  WeightAssignment w = build_weighting(e, arr, args[0]);
  if (name == "L.C") {
    arity(name, args, 2);
    return pair(log_canonical(arr, w), QDivisor::curve(arr.id_of(args[1])), arr).str();
  }
  arity(name, args, 1);
  if (name == "c1_sq") return c1_sq(arr, w).str();
  if (name == "c2") return c2_orb(arr, w).str();
  if (name == "c2_disjoint") return c2_orb_disjoint(arr, w).str();
  if (name == "bmy") return pass_fail(c1_sq(arr, w) == Rat(3) * c2_orb(arr, w));
  if (name == "nakai") return pass_fail(nakai_check(arr, w).pass);
  if (name == "L_sq") return nakai_check(arr, w).L_sq.str();
  return local_group_max(arr, w);
}

}  // namespace

OrbifoldSignature parse_orbifold_signature(std::string_view text) {
  // "(g=1; 3)" or "(g=2; -)"
  std::string s = trim(text);
  auto fail = [&]() -> OrbifoldSignature {
    throw InputError("malformed signature '" + std::string(text) + "'");
  };
  if (s.size() < 7 || s.rfind("(g=", 0) != 0 || s.back() != ')') return fail();
  auto semi = s.find(';');
  if (semi == std::string::npos) return fail();
  OrbifoldSignature sig;
  sig.genus = Rat::parse(trim(s.substr(3, semi - 3))).to_int();
  std::string cones = trim(s.substr(semi + 1, s.size() - semi - 2));
  if (cones != "-") {
    std::size_t start = 0;
    while (start <= cones.size()) {
      auto comma = cones.find(',', start);
      std::string part = trim(cones.substr(start, comma == std::string::npos ? std::string::npos
                                                                            : comma - start));
      long long m = Rat::parse(part).to_int();
      if (m < 2) return fail();
      sig.cones.push_back(m);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  std::sort(sig.cones.begin(), sig.cones.end());
  sig.chi = orbifold_chi(sig.genus, sig.cones);
  return sig;
}

std::pair<std::string, std::vector<std::string>> split_key(const std::string& key) {
  auto open = key.find('(');
  if (open == std::string::npos) {
    std::string name = trim(key);
    if (name.empty()) throw InputError("empty key");
    return {name, {}};
  }
  if (key.back() != ')') throw InputError("malformed key '" + key + "'");
  std::string name = trim(key.substr(0, open));
  if (name.empty()) throw InputError("malformed key '" + key + "'");
  std::vector<std::string> args;
  int depth = 0;
  std::string cur;
  for (std::size_t i = open + 1; i + 1 < key.size(); ++i) {
    char c = key[i];
    if (c == '(') ++depth;
    if (c == ')' && --depth < 0) throw InputError("unbalanced parentheses in key '" + key + "'");
    if (c == ',' && depth == 0) {
      args.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw InputError("unbalanced parentheses in key '" + key + "'");
  if (!trim(cur).empty() || !args.empty()) args.push_back(trim(cur));
  for (const std::string& a : args)
    if (a.empty()) throw InputError("empty argument in key '" + key + "'");
  return {name, args};
}

std::string weight_multiset(std::vector<Weight> w) {
  std::sort(w.begin(), w.end());
  std::string s = "{";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + w[i].str();
  return s + "}";
}

QuotientReport run_quotient(const Catalog& cat, const CatalogEntry& cover,
                            const std::string& action) {
  const ActionDecl& a = cover.action(action);
  Arrangement arr = build_surface(cover);
  WeightAssignment w = build_weighting(cover, arr, a.weighting);
  ActionOnArrangement act = build_action(cover, arr, a);
  QuotientReport r{quotient_weights(arr, w, act), std::nullopt, {}, true, {}};
  QuotientSignature sig = r.plan.signature();
  if (a.quotient) {
    const CatalogEntry& q = cat.get(a.quotient->entry);
    std::vector<Weight> qw;
    if (a.quotient->weighting.empty()) {
      if (!q.declared_quotient)
        throw InputError("quotient entry '" + q.id + "' declares neither a weighting nor quotient data");
      for (const std::string& s : q.declared_quotient->weights) qw.push_back(Weight::parse(s));
      MultiplicativityReport m;
      m.cover_e_orb = r.plan.cover_e_orb;
      m.group_order = r.plan.group_order;
      m.quotient_e_orb = q.declared_quotient->e_orb;
      m.holds = m.cover_e_orb == Rat(static_cast<long long>(m.group_order)) * m.quotient_e_orb;
      r.multiplicativity = m;
    } else {
      Arrangement qarr = build_surface(q);
      WeightAssignment qwa = build_weighting(q, qarr, a.quotient->weighting);
      for (const auto& [id, weight] : qwa) qw.push_back(weight);
      r.multiplicativity = euler_multiplicativity_check(r.plan.cover_e_orb, r.plan.group_order, qarr, qwa);
    }
    std::sort(qw.begin(), qw.end());
    for (const Weight& x : qw) r.quotient_weights.push_back(x.str());
    r.weights_match = qw == sig.weights;
  }
  r.dm_matches = dm_identify(sig, cat.dm_records());
  return r;
}

std::string evaluate(const Catalog& cat, const CatalogEntry& e, const std::string& key) {
  auto [name, args] = split_key(key);
  if (auto v = eval_dm(cat, name, args)) return *v;
  if (auto v = eval_group(e, name, args)) return *v;
  if (auto v = eval_torus(e, name, args)) return *v;
  if (auto v = eval_surface(cat, e, name, args)) return *v;
  throw InputError("unknown key '" + key + "'");
}

}  // namespace orbicheck
