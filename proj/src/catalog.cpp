#include "orbicheck/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "orbicheck/errors.hpp"

namespace orbicheck {

using json = nlohmann::ordered_json;

namespace {

// Object reader that tracks consumed keys so unknown ones can be rejected.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw InputError(where() + "expected an object");
  }

  const json* opt(const std::string& key) {
    auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    seen_.insert(key);
    return &*it;
  }
  const json& req(const std::string& key) {
    const json* v = opt(key);
    if (!v) throw InputError(where() + "missing field '" + key + "'");
    return *v;
  }
  std::string sub(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  void done() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw InputError("field '" + sub(it.key()) + "': unknown key");
  }

 private:
  std::string where() const { return path_.empty() ? "" : "field '" + path_ + "': "; }
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

[[noreturn]] void type_error(const std::string& path, const char* what) {
  throw InputError("field '" + path + "': expected " + what);
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) type_error(path, "a string");
  return j.get<std::string>();
}

long long get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) type_error(path, "an integer");
  return j.get<long long>();
}

std::size_t get_count(const json& j, const std::string& path) {
  long long v = get_int(j, path);
  if (v < 0) type_error(path, "a nonnegative integer");
  return static_cast<std::size_t>(v);
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) type_error(path, "a boolean");
  return j.get<bool>();
}

Rat get_rat(const json& j, const std::string& path) {
  std::string s = get_string(j, path);
  try {
    return Rat::parse(s);
  } catch (const InputError& e) {
    throw InputError("field '" + path + "': " + e.what());
  }
}

const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) type_error(path, "an array");
  return j;
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::vector<std::string> get_strings(const json& j, const std::string& path) {
  std::vector<std::string> out;
  const json& a = get_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(get_string(a[i], index_path(path, i)));
  return out;
}

// {"name": value} objects in document order.
template <class F>
void each_member(const json& j, const std::string& path, F f) {
  if (!j.is_object()) type_error(path, "an object");
  for (auto it = j.begin(); it != j.end(); ++it) f(it.key(), it.value(), path + "." + it.key());
}

std::array<std::string, 2> get_pair(const json& j, const std::string& path) {
  std::vector<std::string> v = get_strings(j, path);
  if (v.size() != 2) type_error(path, "two entries");
  return {v[0], v[1]};
}

CurveDecl parse_curve(const json& j, const std::string& path) {
  Fields f(j, path);
  CurveDecl c;
  c.name = get_string(f.req("name"), f.sub("name"));
  c.genus = get_int(f.req("genus"), f.sub("genus"));
  c.self_int = get_rat(f.req("self_int"), f.sub("self_int"));
  if (const json* v = f.opt("candidate")) c.candidate = get_bool(*v, f.sub("candidate"));
  f.done();
  return c;
}

ExplicitSurface parse_surface(const json& j, const std::string& path) {
  Fields f(j, path);
  ExplicitSurface s;
  s.euler = get_int(f.req("euler"), f.sub("euler"));
  {
    const std::string p = f.sub("curves");
    const json& a = get_array(f.req("curves"), p);
    for (std::size_t i = 0; i < a.size(); ++i) s.curves.push_back(parse_curve(a[i], index_path(p, i)));
  }
  if (const json* a = f.opt("intersections")) {
    const std::string p = f.sub("intersections");
    get_array(*a, p);
    for (std::size_t i = 0; i < a->size(); ++i) {
      Fields g((*a)[i], index_path(p, i));
      auto names = get_pair(g.req("curves"), g.sub("curves"));
      s.intersections.push_back({names[0], names[1], get_int(g.req("count"), g.sub("count"))});
      g.done();
    }
  }
  if (const json* a = f.opt("crossings")) {
    const std::string p = f.sub("crossings");
    get_array(*a, p);
    for (std::size_t i = 0; i < a->size(); ++i) {
      Fields g((*a)[i], index_path(p, i));
      CrossingDecl c;
      c.name = get_string(g.req("name"), g.sub("name"));
      c.curves = get_strings(g.req("curves"), g.sub("curves"));
      g.done();
      s.crossings.push_back(std::move(c));
    }
  }
  if (const json* k = f.opt("canonical")) {
    Fields g(*k, f.sub("canonical"));
    CanonicalDecl c;
    if (const json* comb = g.opt("combination")) {
      each_member(*comb, g.sub("combination"), [&](const std::string& name, const json& v,
                                                   const std::string& p) {
        c.terms.emplace_back(name, get_rat(v, p));
      });
    } else {
      c.combination = false;
      each_member(g.req("pairings"), g.sub("pairings"),
                  [&](const std::string& name, const json& v, const std::string& p) {
                    c.terms.emplace_back(name, get_rat(v, p));
                  });
      c.square = get_rat(g.req("square"), g.sub("square"));
    }
    g.done();
    s.canonical = std::move(c);
  }
  if (const json* a = f.opt("blowups")) {
    const std::string p = f.sub("blowups");
    get_array(*a, p);
    for (std::size_t i = 0; i < a->size(); ++i) {
      Fields g((*a)[i], index_path(p, i));
      BlowupDecl b;
      b.exceptional = get_string(g.req("exceptional"), g.sub("exceptional"));
      if (const json* c = g.opt("crossing"))
        b.crossing = get_string(*c, g.sub("crossing"));
      else
        b.curves = get_strings(g.req("curves"), g.sub("curves"));
      g.done();
      s.blowups.push_back(std::move(b));
    }
  }
  if (const json* r = f.opt("rename"))
    each_member(*r, f.sub("rename"), [&](const std::string& from, const json& v,
                                         const std::string& p) {
      s.rename.emplace_back(from, get_string(v, p));
    });
  f.done();
  return s;
}

TorusPointDecl parse_point(const json& j, const std::string& path) {
  Fields f(j, path);
  TorusPointDecl p;
  p.name = get_string(f.req("name"), f.sub("name"));
  auto zw = get_pair(f.req("point"), f.sub("point"));
  p.z = zw[0];
  p.w = zw[1];
  f.done();
  return p;
}

TorusCurveDecl parse_torus_curve(const json& j, const std::string& path) {
  Fields f(j, path);
  TorusCurveDecl c;
  c.name = get_string(f.req("name"), f.sub("name"));
  if (const json* v = f.opt("horizontal")) {
    c.kind = "horizontal";
    c.params = {get_string(*v, f.sub("horizontal"))};
  } else if (const json* v = f.opt("vertical")) {
    c.kind = "vertical";
    c.params = {get_string(*v, f.sub("vertical"))};
  } else if (const json* v = f.opt("graph")) {
    c.kind = "graph";
    c.params = {get_string(*v, f.sub("graph")), get_string(f.req("offset"), f.sub("offset"))};
  } else if (const json* v = f.opt("line")) {
    c.kind = "line";
    auto ab = get_pair(*v, f.sub("line"));
    auto zw = get_pair(f.req("through"), f.sub("through"));
    c.params = {ab[0], ab[1], zw[0], zw[1]};
  } else {
    throw InputError("field '" + path + "': expected one of horizontal, vertical, graph, line");
  }
  if (const json* v = f.opt("candidate")) c.candidate = get_bool(*v, f.sub("candidate"));
  f.done();
  return c;
}

AutoDecl parse_auto(const json& j, const std::string& path) {
  Fields f(j, path);
  AutoDecl a;
  a.name = get_string(f.req("name"), f.sub("name"));
  {
    const std::string p = f.sub("matrix");
    const json& m = get_array(f.req("matrix"), p);
    if (m.size() != 2) type_error(p, "two rows");
    for (std::size_t r = 0; r < 2; ++r) {
      auto row = get_pair(m[r], index_path(p, r));
      a.matrix[r] = {row[0], row[1]};
    }
  }
  if (const json* s = f.opt("shift")) a.shift = get_pair(*s, f.sub("shift"));
  if (const json* l = f.opt("lattice")) {
    const std::string p = f.sub("lattice");
    get_array(*l, p);
    if (l->size() != 4) type_error(p, "four basis columns");
    std::vector<std::vector<long long>> cols;
    for (std::size_t i = 0; i < 4; ++i) {
      const json& col = get_array((*l)[i], index_path(p, i));
      if (col.size() != 4) type_error(index_path(p, i), "four integers");
      std::vector<long long> v;
      for (std::size_t k = 0; k < 4; ++k) v.push_back(get_int(col[k], index_path(index_path(p, i), k)));
      cols.push_back(std::move(v));
    }
    a.lattice = std::move(cols);
  }
  f.done();
  return a;
}

TorusDecl parse_torus(const json& j, const std::string& path, bool named) {
  Fields f(j, path);
  TorusDecl t;
  if (named) t.name = get_string(f.req("name"), f.sub("name"));
  t.ring = get_string(f.req("ring"), f.sub("ring"));
  auto list = [&](const char* key, auto parse, auto& out) {
    if (const json* a = f.opt(key)) {
      const std::string p = f.sub(key);
      get_array(*a, p);
      for (std::size_t i = 0; i < a->size(); ++i) out.push_back(parse((*a)[i], index_path(p, i)));
    }
  };
  list("curves", parse_torus_curve, t.curves);
  list("blowups", parse_point, t.blowups);
  list("points", parse_point, t.points);
  list("automorphisms", parse_auto, t.automorphisms);
  list("groups", [](const json& g, const std::string& p) {
    Fields h(g, p);
    GroupDecl d;
    d.name = get_string(h.req("name"), h.sub("name"));
    d.generators = get_strings(h.req("generators"), h.sub("generators"));
    if (const json* b = h.opt("bound")) d.bound = get_count(*b, h.sub("bound"));
    h.done();
    return d;
  }, t.groups);
  f.done();
  return t;
}

ActionDecl parse_action(const json& j, const std::string& path) {
  Fields f(j, path);
  ActionDecl a;
  a.name = get_string(f.req("name"), f.sub("name"));
  a.weighting = get_string(f.req("weighting"), f.sub("weighting"));
  a.group_order = get_count(f.req("group_order"), f.sub("group_order"));
  if (const json* t = f.opt("torus_group")) {
    a.torus_group = get_string(*t, f.sub("torus_group"));
  } else {
    const std::string p = f.sub("generators");
    const json& gens = get_array(f.req("generators"), p);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string gp = index_path(p, i);
      Cycles cycles;
      const json& cs = get_array(gens[i], gp);
      for (std::size_t k = 0; k < cs.size(); ++k) cycles.push_back(get_strings(cs[k], index_path(gp, k)));
      a.generators.push_back(std::move(cycles));
    }
  }
  if (const json* b = f.opt("branch"))
    each_member(*b, f.sub("branch"), [&](const std::string& name, const json& v,
                                         const std::string& p) {
      a.branch.emplace_back(name, get_int(v, p));
    });
  if (const json* q = f.opt("quotient")) {
    Fields g(*q, f.sub("quotient"));
    QuotientRef r;
    r.entry = get_string(g.req("entry"), g.sub("entry"));
    if (const json* w = g.opt("weighting")) r.weighting = get_string(*w, g.sub("weighting"));
    g.done();
    a.quotient = std::move(r);
  }
  f.done();
  return a;
}

SubgroupDecl parse_subgroup(const json& j, const std::string& path) {
  Fields f(j, path);
  SubgroupDecl s;
  s.name = get_string(f.req("name"), f.sub("name"));
  s.presentation = get_string(f.req("presentation"), f.sub("presentation"));
  s.words = get_strings(f.req("words"), f.sub("words"));
  if (const json* t = f.opt("target")) s.target = get_string(*t, f.sub("target"));
  if (const json* t = f.opt("target_index")) s.target_index = get_count(*t, f.sub("target_index"));
  if (const json* sp = f.opt("search")) {
    Fields g(*sp, f.sub("search"));
    SearchDecl d;
    d.max_length = get_count(g.req("max_length"), g.sub("max_length"));
    d.max_words = get_count(g.req("max_words"), g.sub("max_words"));
    d.max_cosets = get_count(g.req("max_cosets"), g.sub("max_cosets"));
    g.done();
    s.search = d;
  }
  f.done();
  return s;
}

DMRecordDecl parse_dm(const json& j, const std::string& path) {
  Fields f(j, path);
  DMRecordDecl d;
  d.weights = get_string(f.req("weights"), f.sub("weights"));
  d.flag = get_string(f.req("flag"), f.sub("flag"));
  d.anchor = get_string(f.req("anchor"), f.sub("anchor"));
  d.source = get_string(f.req("source"), f.sub("source"));
  if (const json* s = f.opt("signature")) {
    Fields g(*s, f.sub("signature"));
    d.signature_weights = get_strings(g.req("weights"), g.sub("weights"));
    d.signature_e_orb = get_rat(g.req("e_orb"), g.sub("e_orb"));
    g.done();
  }
  f.done();
  return d;
}

Provenance parse_provenance(const std::string& s, const std::string& path) {
  if (s == "quoted") return Provenance::quoted;
  if (s == "trivial") return Provenance::trivial;
  if (s == "derived") return Provenance::derived;
  throw InputError("field '" + path + "': unknown provenance '" + s + "'");
}

ExpectedValue parse_expected(const json& j, const std::string& path) {
  Fields f(j, path);
  ExpectedValue e;
  e.key = get_string(f.req("key"), f.sub("key"));
  e.value = get_string(f.req("value"), f.sub("value"));
  e.provenance = parse_provenance(get_string(f.req("provenance"), f.sub("provenance")),
                                  f.sub("provenance"));
  if (const json* a = f.opt("anchor")) e.anchor = get_string(*a, f.sub("anchor"));
  if (const json* o = f.opt("oracle")) e.oracle = get_string(*o, f.sub("oracle"));
  f.done();
  if (e.provenance == Provenance::quoted && e.anchor.empty())
    throw InputError("field '" + path + "': quoted value needs an anchor");
  if (e.provenance == Provenance::derived && e.oracle.empty())
    throw InputError("field '" + path + "': derived value needs an oracle");
  return e;
}

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

CatalogEntry parse_document(const json& root) {
  Fields f(root, "");
  CatalogEntry e;
  e.id = get_string(f.req("id"), "id");
  e.description = get_string(f.req("description"), "description");
  if (const json* s = f.opt("surface")) e.surface = parse_surface(*s, "surface");
  if (const json* t = f.opt("torus")) e.torus = parse_torus(*t, "torus", false);
  if (const json* a = f.opt("tori")) {
    get_array(*a, "tori");
    for (std::size_t i = 0; i < a->size(); ++i)
      e.tori.push_back(parse_torus((*a)[i], index_path("tori", i), true));
  }
  if (e.surface && e.torus) throw InputError("an entry has either 'surface' or 'torus', not both");
  if (const json* w = f.opt("weightings"))
    each_member(*w, "weightings", [&](const std::string& name, const json& v,
                                      const std::string& p) {
      std::vector<std::pair<std::string, std::string>> ws;
      each_member(v, p, [&](const std::string& curve, const json& r, const std::string& rp) {
        std::string text = get_string(r, rp);
        try {
          Weight::parse(text);
        } catch (const InputError& err) {
          throw InputError("field '" + rp + "': " + err.what());
        }
        ws.emplace_back(curve, text);
      });
      e.weightings.emplace_back(name, std::move(ws));
    });
  if (const json* a = f.opt("actions")) {
    get_array(*a, "actions");
    for (std::size_t i = 0; i < a->size(); ++i)
      e.actions.push_back(parse_action((*a)[i], index_path("actions", i)));
  }
  if (const json* q = f.opt("quotient")) {
    Fields g(*q, "quotient");
    DeclaredQuotient d;
    d.weights = get_strings(g.req("weights"), "quotient.weights");
    for (std::size_t i = 0; i < d.weights.size(); ++i) {
      try {
        Weight::parse(d.weights[i]);
      } catch (const InputError& err) {
        throw InputError("field '" + index_path("quotient.weights", i) + "': " + err.what());
      }
    }
    d.e_orb = get_rat(g.req("e_orb"), "quotient.e_orb");
    g.done();
    e.declared_quotient = std::move(d);
  }
  if (const json* p = f.opt("presentations"))
    each_member(*p, "presentations", [&](const std::string& name, const json& v,
                                         const std::string& path) {
      e.presentations.emplace_back(name, get_string(v, path));
    });
  auto list = [&](const char* key, auto parse, auto& out) {
    if (const json* a = f.opt(key)) {
      get_array(*a, key);
      for (std::size_t i = 0; i < a->size(); ++i) out.push_back(parse((*a)[i], index_path(key, i)));
    }
  };
  list("subgroups", parse_subgroup, e.subgroups);
  list("dm_records", parse_dm, e.dm_records);
  list("expected", parse_expected, e.expected);
  list("flags", [](const json& j, const std::string& p) {
    Fields g(j, p);
    EntryFlag fl;
    fl.key = get_string(g.req("key"), g.sub("key"));
    fl.note = get_string(g.req("note"), g.sub("note"));
    g.done();
    return fl;
  }, e.flags);
  f.done();
  return e;
}

// Serialization. Field order is fixed; optional fields are omitted at their defaults.

json pair_json(const std::string& a, const std::string& b) { return json::array({a, b}); }

json surface_json(const ExplicitSurface& s) {
  json j = json::object();
  j["euler"] = s.euler;
  json curves = json::array();
  for (const CurveDecl& c : s.curves) {
    json cj = {{"name", c.name}, {"genus", c.genus}, {"self_int", c.self_int.str()}};
    if (!c.candidate) cj["candidate"] = false;
    curves.push_back(std::move(cj));
  }
  j["curves"] = std::move(curves);
  if (!s.intersections.empty()) {
    json a = json::array();
    for (const MeetDecl& m : s.intersections)
      a.push_back({{"curves", pair_json(m.a, m.b)}, {"count", m.count}});
    j["intersections"] = std::move(a);
  }
  if (!s.crossings.empty()) {
    json a = json::array();
    for (const CrossingDecl& c : s.crossings) a.push_back({{"name", c.name}, {"curves", c.curves}});
    j["crossings"] = std::move(a);
  }
  if (s.canonical) {
    json terms = json::object();
    for (const auto& [name, v] : s.canonical->terms) terms[name] = v.str();
    if (s.canonical->combination)
      j["canonical"] = {{"combination", std::move(terms)}};
    else
      j["canonical"] = {{"pairings", std::move(terms)}, {"square", s.canonical->square.str()}};
  }
  if (!s.blowups.empty()) {
    json a = json::array();
    for (const BlowupDecl& b : s.blowups) {
      json bj = {{"exceptional", b.exceptional}};
      if (b.crossing)
        bj["crossing"] = *b.crossing;
      else
        bj["curves"] = b.curves;
      a.push_back(std::move(bj));
    }
    j["blowups"] = std::move(a);
  }
  if (!s.rename.empty()) {
    json r = json::object();
    for (const auto& [from, to] : s.rename) r[from] = to;
    j["rename"] = std::move(r);
  }
  return j;
}

json point_json(const TorusPointDecl& p) { return {{"name", p.name}, {"point", pair_json(p.z, p.w)}}; }

json torus_json(const TorusDecl& t, bool named) {
  json j = json::object();
  if (named) j["name"] = t.name;
  j["ring"] = t.ring;
  if (!t.curves.empty()) {
    json a = json::array();
    for (const TorusCurveDecl& c : t.curves) {
      json cj = {{"name", c.name}};
      if (c.kind == "graph") {
        cj["graph"] = c.params.at(0);
        cj["offset"] = c.params.at(1);
      } else if (c.kind == "line") {
        cj["line"] = pair_json(c.params.at(0), c.params.at(1));
        cj["through"] = pair_json(c.params.at(2), c.params.at(3));
      } else {
        cj[c.kind] = c.params.at(0);
      }
      if (!c.candidate) cj["candidate"] = false;
      a.push_back(std::move(cj));
    }
    j["curves"] = std::move(a);
  }
  auto points = [&](const char* key, const std::vector<TorusPointDecl>& ps) {
    if (ps.empty()) return;
    json a = json::array();
    for (const TorusPointDecl& p : ps) a.push_back(point_json(p));
    j[key] = std::move(a);
  };
  points("blowups", t.blowups);
  points("points", t.points);
  if (!t.automorphisms.empty()) {
    json a = json::array();
    for (const AutoDecl& au : t.automorphisms) {
      json aj = {{"name", au.name},
                 {"matrix", json::array({pair_json(au.matrix[0][0], au.matrix[0][1]),
                                         pair_json(au.matrix[1][0], au.matrix[1][1])})}};
      if (au.shift[0] != "0" || au.shift[1] != "0") aj["shift"] = pair_json(au.shift[0], au.shift[1]);
      if (au.lattice) aj["lattice"] = *au.lattice;
      a.push_back(std::move(aj));
    }
    j["automorphisms"] = std::move(a);
  }
  if (!t.groups.empty()) {
    json a = json::array();
    for (const GroupDecl& g : t.groups)
      a.push_back({{"name", g.name}, {"generators", g.generators}, {"bound", g.bound}});
    j["groups"] = std::move(a);
  }
  return j;
}

json action_json(const ActionDecl& a) {
  json j = {{"name", a.name}, {"weighting", a.weighting}, {"group_order", a.group_order}};
  if (a.torus_group) {
    j["torus_group"] = *a.torus_group;
  } else {
    json gens = json::array();
    for (const Cycles& c : a.generators) gens.push_back(c);
    j["generators"] = std::move(gens);
  }
  if (!a.branch.empty()) {
    json b = json::object();
    for (const auto& [name, v] : a.branch) b[name] = v;
    j["branch"] = std::move(b);
  }
  if (a.quotient) {
    json q = {{"entry", a.quotient->entry}};
    if (!a.quotient->weighting.empty()) q["weighting"] = a.quotient->weighting;
    j["quotient"] = std::move(q);
  }
  return j;
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::quoted: return "quoted";
    case Provenance::trivial: return "trivial";
    case Provenance::derived: return "derived";
  }
  return "?";
}

CatalogEntry parse_entry(std::string_view text, std::string_view source) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // byte is 1-based and points at the offending character.
    auto [line, col] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    auto colon = msg.rfind(": ");
    throw ParseError(std::string(source) + ": syntax error: " +
                         (colon == std::string::npos ? msg : msg.substr(colon + 2)),
                     line, col);
  }
  try {
    return parse_document(root);
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw InputError(std::string(source) + ": " + e.what());
  }
}

std::string serialize(const CatalogEntry& e) {
  json j = json::object();
  j["id"] = e.id;
  j["description"] = e.description;
  if (e.surface) j["surface"] = surface_json(*e.surface);
  if (e.torus) j["torus"] = torus_json(*e.torus, false);
  if (!e.tori.empty()) {
    json a = json::array();
    for (const TorusDecl& t : e.tori) a.push_back(torus_json(t, true));
    j["tori"] = std::move(a);
  }
  if (!e.weightings.empty()) {
    json w = json::object();
    for (const auto& [name, ws] : e.weightings) {
      json m = json::object();
      for (const auto& [curve, r] : ws) m[curve] = r;
      w[name] = std::move(m);
    }
    j["weightings"] = std::move(w);
  }
  if (!e.actions.empty()) {
    json a = json::array();
    for (const ActionDecl& act : e.actions) a.push_back(action_json(act));
    j["actions"] = std::move(a);
  }
  if (e.declared_quotient)
    j["quotient"] = {{"weights", e.declared_quotient->weights},
                     {"e_orb", e.declared_quotient->e_orb.str()}};
  if (!e.presentations.empty()) {
    json p = json::object();
    for (const auto& [name, text] : e.presentations) p[name] = text;
    j["presentations"] = std::move(p);
  }
  if (!e.subgroups.empty()) {
    json a = json::array();
    for (const SubgroupDecl& s : e.subgroups) {
      json sj = {{"name", s.name}, {"presentation", s.presentation}, {"words", s.words}};
      if (s.target) sj["target"] = *s.target;
      if (s.target_index) sj["target_index"] = *s.target_index;
      if (s.search)
        sj["search"] = {{"max_length", s.search->max_length},
                        {"max_words", s.search->max_words},
                        {"max_cosets", s.search->max_cosets}};
      a.push_back(std::move(sj));
    }
    j["subgroups"] = std::move(a);
  }
  if (!e.dm_records.empty()) {
    json a = json::array();
    for (const DMRecordDecl& d : e.dm_records) {
      json dj = {{"weights", d.weights}, {"flag", d.flag}, {"anchor", d.anchor}, {"source", d.source}};
      if (d.signature_weights)
        dj["signature"] = {{"weights", *d.signature_weights},
                           {"e_orb", d.signature_e_orb.value_or(Rat(0)).str()}};
      a.push_back(std::move(dj));
    }
    j["dm_records"] = std::move(a);
  }
  if (!e.expected.empty()) {
    json a = json::array();
    for (const ExpectedValue& x : e.expected) {
      json xj = {{"key", x.key}, {"value", x.value}, {"provenance", to_string(x.provenance)}};
      if (!x.anchor.empty()) xj["anchor"] = x.anchor;
      if (!x.oracle.empty()) xj["oracle"] = x.oracle;
      a.push_back(std::move(xj));
    }
    j["expected"] = std::move(a);
  }
  if (!e.flags.empty()) {
    json a = json::array();
    for (const EntryFlag& f : e.flags) a.push_back({{"key", f.key}, {"note", f.note}});
    j["flags"] = std::move(a);
  }
  return j.dump(2) + "\n";
}

bool CatalogEntry::has_surface() const {
  return surface.has_value() || (torus.has_value() && !torus->curves.empty());
}

const TorusDecl* CatalogEntry::find_torus(const std::string& name) const {
  if (name.empty()) {
    if (torus) return &*torus;
    if (tori.size() == 1) return &tori[0];
    return nullptr;
  }
  for (const TorusDecl& t : tori)
    if (t.name == name) return &t;
  if (torus && torus->name == name) return &*torus;
  return nullptr;
}

const ActionDecl& CatalogEntry::action(const std::string& name) const {
  for (const ActionDecl& a : actions)
    if (a.name == name) return a;
  throw InputError("entry '" + id + "' has no action '" + name + "'");
}

const SubgroupDecl& CatalogEntry::subgroup(const std::string& name) const {
  for (const SubgroupDecl& s : subgroups)
    if (s.name == name) return s;
  throw InputError("entry '" + id + "' has no subgroup '" + name + "'");
}

std::string CatalogEntry::presentation_text(const std::string& name) const {
  for (const auto& [n, text] : presentations)
    if (n == name) return text;
  throw InputError("entry '" + id + "' has no presentation '" + name + "'");
}

std::vector<const EntryFlag*> CatalogEntry::flags_for(const std::string& key) const {
  std::vector<const EntryFlag*> out;
  for (const EntryFlag& f : flags)
    if (f.key == key) out.push_back(&f);
  return out;
}

// Builders.

QuadraticRing torus_ring(const TorusDecl& t) { return QuadraticRing::parse_kind(t.ring); }

namespace {

TorusPoint parse_point_pair(const QuadraticRing& ring, const std::string& z, const std::string& w) {
  return TorusPoint::from_pair(ring.parse_rational(z), ring.parse_rational(w));
}

AbelianCurve build_curve(const QuadraticRing& ring, const TorusCurveDecl& c) {
  try {
    if (c.kind == "horizontal") return AbelianCurve::horizontal(ring, ring.parse_rational(c.params.at(0)));
    if (c.kind == "vertical") return AbelianCurve::vertical(ring, ring.parse_rational(c.params.at(0)));
    if (c.kind == "graph")
      return AbelianCurve::graph(ring, ring.parse(c.params.at(0)), ring.parse_rational(c.params.at(1)));
    if (c.kind == "line")
      return AbelianCurve::line(ring, ring.parse(c.params.at(0)), ring.parse(c.params.at(1)),
                                parse_point_pair(ring, c.params.at(2), c.params.at(3)));
  } catch (const InputError& e) {
    throw InputError("curve '" + c.name + "': " + e.what());
  }
  throw InputError("curve '" + c.name + "': unknown kind '" + c.kind + "'");
}

// Rebuilds `arr` with the orbifold-candidate flag cleared on the named curves.
Arrangement with_non_candidates(const Arrangement& arr, const std::set<std::string>& names) {
  if (names.empty()) return arr;
  std::vector<Curve> curves = arr.curves();
  for (Curve& c : curves)
    if (names.count(c.name)) c.orbifold_candidate = false;
  const std::size_t n = arr.size();
  std::vector<long long> inter(n * n, 0);
  for (CurveId i = 0; i < n; ++i)
    for (CurveId j = 0; j < n; ++j)
      if (i != j) inter[i * n + j] = arr.intersection(i, j);
  return Arrangement(arr.euler_surface(), std::move(curves), std::move(inter), arr.crossings(),
                     arr.canonical());
}

}  // namespace

TorusSurface build_torus_surface(const TorusDecl& t) {
  TorusSurface s;
  s.ring = torus_ring(t);
  for (const TorusCurveDecl& c : t.curves) s.curves.push_back({c.name, build_curve(s.ring, c)});
  for (const TorusPointDecl& p : t.blowups)
    s.blowups.push_back({p.name, parse_point_pair(s.ring, p.z, p.w)});
  return s;
}

AffineAuto build_auto(const TorusDecl& t, const AutoDecl& a) {
  QuadraticRing ring = torus_ring(t);
  try {
    RingMatrix m;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m[r][c] = ring.parse(a.matrix[r][c]);
    RatElem sz = ring.parse_rational(a.shift[0]);
    RatElem sw = ring.parse_rational(a.shift[1]);
    if (!a.lattice) return AffineAuto::ring_linear(ring, m, TorusPoint::from_pair(sz, sw));
    IntMatrix basis(4, 4);
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t r = 0; r < 4; ++r) basis(r, c) = (*a.lattice)[c][r];
    IntMatrix lin = AffineAuto::ring_linear(ring, m).matrix();
    return to_sublattice(basis, lin, {sz[0], sz[1], sw[0], sw[1]});
  } catch (const InputError& e) {
    throw InputError("automorphism '" + a.name + "': " + e.what());
  }
}

namespace {

// Products of automorphism names with integer powers and parentheses: "t4^-1 psi2 t4".
class AutoExpr {
 public:
  AutoExpr(const TorusDecl& t, std::string_view text) : t_(t), s_(text) {}

  AffineAuto parse() {
    AffineAuto v = product();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("automorphism expression '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '*')) ++pos_;
  }
  bool at_factor() {
    skip();
    return pos_ < s_.size() && (s_[pos_] == '(' || std::isalpha(static_cast<unsigned char>(s_[pos_])));
  }
  AffineAuto product() {
    if (!at_factor()) fail("expected a name");
    AffineAuto v = factor();
    while (at_factor()) v = v.compose(factor());
    return v;
  }
  AffineAuto factor() {
    AffineAuto base = AffineAuto::identity();
    if (s_[pos_] == '(') {
      ++pos_;
      base = product();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
    } else {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      base = lookup(std::string(s_.substr(start, pos_ - start)));
    }
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      std::size_t start = pos_;
      if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string digits(s_.substr(start, pos_ - start));
      if (digits.empty() || digits == "-") fail("expected an exponent");
      long long k = std::stoll(digits);
      if (k < 0) {
        base = base.inverse();
        k = -k;
      }
      AffineAuto r = AffineAuto::identity();
      for (long long i = 0; i < k; ++i) r = r.compose(base);
      return r;
    }
    return base;
  }
  AffineAuto lookup(const std::string& name) const {
    if (name == "id") return AffineAuto::identity();
    for (const AutoDecl& a : t_.automorphisms)
      if (a.name == name) return build_auto(t_, a);
    fail("unknown automorphism '" + name + "'");
  }

  const TorusDecl& t_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

AffineAuto eval_auto_expr(const TorusDecl& t, std::string_view text) {
  return AutoExpr(t, text).parse();
}

FiniteGroup build_group(const TorusDecl& t, const GroupDecl& g) {
  std::vector<AffineAuto> gens;
  for (const std::string& x : g.generators) gens.push_back(eval_auto_expr(t, x));
  auto r = group_closure(gens, g.bound);
  if (auto* o = std::get_if<Overflow>(&r))
    throw InputError("group '" + g.name + "' exceeds its bound of " + std::to_string(o->limit) +
                     " elements");
  return std::get<FiniteGroup>(std::move(r));
}

Arrangement build_surface(const CatalogEntry& e) {
  if (e.torus) {
    if (e.torus->curves.empty()) throw InputError("entry '" + e.id + "' has no surface");
    std::set<std::string> skip;
    for (const TorusCurveDecl& c : e.torus->curves)
      if (!c.candidate) skip.insert(c.name);
    return with_non_candidates(blown_up_arrangement(build_torus_surface(*e.torus)), skip);
  }
  if (!e.surface) throw InputError("entry '" + e.id + "' has no surface");
  const ExplicitSurface& s = *e.surface;
  ArrangementBuilder b(s.euler);
  for (const CurveDecl& c : s.curves) b.curve(c.name, c.genus, c.self_int, c.candidate);
  for (const MeetDecl& m : s.intersections) b.meet(m.a, m.b, m.count);
  for (const CrossingDecl& c : s.crossings) b.crossing(c.name, c.curves);
  if (s.canonical) {
    if (s.canonical->combination)
      b.canonical_combination(s.canonical->terms);
    else
      b.canonical_pairings(s.canonical->terms, s.canonical->square);
  }
  Arrangement arr = b.build();
  if (!s.blowups.empty()) {
    std::vector<BlowupCenter> centers;
    for (const BlowupDecl& d : s.blowups) {
      if (d.crossing) {
        centers.push_back(center_at_crossing(arr, *d.crossing, d.exceptional));
      } else {
        BlowupCenter c{{}, d.exceptional};
        for (const std::string& name : d.curves) c.through.push_back(arr.id_of(name));
        centers.push_back(std::move(c));
      }
    }
    arr = blowup(arr, centers);
  }
  if (!s.rename.empty()) arr = rename_curves(arr, {s.rename.begin(), s.rename.end()});
  return arr;
}

WeightAssignment build_weighting(const CatalogEntry& e, const Arrangement& arr,
                                 const std::string& name) {
  for (const auto& [n, ws] : e.weightings) {
    if (n != name) continue;
    std::vector<std::pair<std::string, Weight>> named;
    for (const auto& [curve, r] : ws) named.emplace_back(curve, Weight::parse(r));
    return weights_by_name(arr, named);
  }
  throw InputError("entry '" + e.id + "' has no weighting '" + name + "'");
}

ActionOnArrangement build_action(const CatalogEntry& e, const Arrangement& arr,
                                 const ActionDecl& a) {
  std::map<std::string, long long> branch(a.branch.begin(), a.branch.end());
  if (!a.torus_group) {
    ActionOnArrangement act = action_from_cycles(arr, a.group_order, a.generators, branch);
    validate_action(arr, act);
    return act;
  }
  if (!e.torus) throw InputError("action '" + a.name + "' needs a torus surface");
  const TorusDecl& t = *e.torus;
  const GroupDecl* g = nullptr;
  for (const GroupDecl& d : t.groups)
    if (d.name == *a.torus_group) g = &d;
  if (!g) throw InputError("action '" + a.name + "': unknown group '" + *a.torus_group + "'");
  TorusSurface s = build_torus_surface(t);
  FiniteGroup group = build_group(t, *g);
  auto extra = undeclared_reflection_curves(s, group);
  if (!extra.empty())
    throw InputError("action '" + a.name + "': reflection curve " + extra.front().str() +
                     " is not declared");
  ActionOnArrangement act = derive_action(s, group);
  if (act.group_order != a.group_order)
    throw InputError("action '" + a.name + "': declared order " + std::to_string(a.group_order) +
                     ", derived " + std::to_string(act.group_order));
  for (const auto& [name, b] : a.branch) {
    CurveId id = arr.id_of(name);
    if (act.branch[id] != b)
      throw InputError("action '" + a.name + "': declared branch order " + std::to_string(b) +
                       " on '" + name + "', derived " + std::to_string(act.branch[id]));
  }
  validate_action(arr, act);
  return act;
}

DMRecord build_dm_record(const DMRecordDecl& d) {
  DMRecord r;
  r.weights = DMWeights::parse(d.weights);
  r.flag = parse_arithmeticity(d.flag);
  r.anchor = d.anchor;
  r.source = d.source;
  if (d.signature_weights) {
    std::vector<Weight> ws;
    for (const std::string& w : *d.signature_weights) ws.push_back(Weight::parse(w));
    r.signature = make_signature(std::move(ws), d.signature_e_orb.value_or(Rat(0)));
  }
  return r;
}

// Catalog.

Catalog::Catalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
  std::set<std::string> ids;
  for (const CatalogEntry& e : entries_)
    if (!ids.insert(e.id).second) throw InputError("duplicate catalogue id '" + e.id + "'");
  for (const CatalogEntry& e : entries_) {
    try {
      check_entry(*this, e);
    } catch (const InputError& err) {
      throw InputError("entry '" + e.id + "': " + err.what());
    }
  }
}

Catalog Catalog::embedded() {
  std::vector<CatalogEntry> entries;
  for (const EmbeddedDocument& d : embedded_catalog()) {
    CatalogEntry e = parse_entry(d.text, std::string(d.id) + ".json");
    if (e.id != d.id)
      throw InputError(std::string(d.id) + ".json: id '" + e.id + "' does not match the file name");
    entries.push_back(std::move(e));
  }
  return Catalog(std::move(entries));
}

Catalog Catalog::from_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw InputError("catalogue directory '" + dir.string() + "' does not exist");
  std::vector<std::filesystem::path> files;
  for (const auto& de : std::filesystem::directory_iterator(dir))
    if (de.is_regular_file() && de.path().extension() == ".json") files.push_back(de.path());
  std::sort(files.begin(), files.end());
  std::vector<CatalogEntry> entries;
  for (const auto& p : files) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    CatalogEntry e = parse_entry(ss.str(), p.string());
    if (e.id != p.stem().string())
      throw InputError(p.string() + ": id '" + e.id + "' does not match the file name");
    entries.push_back(std::move(e));
  }
  return Catalog(std::move(entries));
}

const CatalogEntry& Catalog::get(const std::string& id) const {
  for (const CatalogEntry& e : entries_)
    if (e.id == id) return e;
  throw InputError("no catalogue entry '" + id + "'");
}

bool Catalog::contains(const std::string& id) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const CatalogEntry& e) { return e.id == id; });
}

std::vector<DMRecord> Catalog::dm_records() const {
  std::vector<DMRecord> out;
  for (const CatalogEntry& e : entries_)
    for (const DMRecordDecl& d : e.dm_records) out.push_back(build_dm_record(d));
  return out;
}

void check_entry(const Catalog& cat, const CatalogEntry& e) {
  std::optional<Arrangement> arr;
  if (e.has_surface()) arr = build_surface(e);
  for (const auto& [name, ws] : e.weightings) {
    if (!arr) throw InputError("weighting '" + name + "' without a surface");
    build_weighting(e, *arr, name);
  }
  for (const ActionDecl& a : e.actions) {
    if (!arr) throw InputError("action '" + a.name + "' without a surface");
    build_weighting(e, *arr, a.weighting);
    build_action(e, *arr, a);
    if (a.quotient && !cat.contains(a.quotient->entry))
      throw InputError("action '" + a.name + "': unknown quotient entry '" + a.quotient->entry + "'");
  }
  auto check_torus = [](const TorusDecl& t) {
    QuadraticRing ring = torus_ring(t);
    build_torus_surface(t);
    for (const TorusPointDecl& p : t.points) parse_point_pair(ring, p.z, p.w);
    for (const AutoDecl& a : t.automorphisms) build_auto(t, a);
    for (const GroupDecl& g : t.groups) build_group(t, g);
  };
  if (e.torus) check_torus(*e.torus);
  for (const TorusDecl& t : e.tori) check_torus(t);
  for (const auto& [name, text] : e.presentations) Presentation::parse(text);
  for (const SubgroupDecl& s : e.subgroups) {
    Presentation p = Presentation::parse(e.presentation_text(s.presentation));
    for (const std::string& w : s.words) p.parse_word(w);
  }
  for (const DMRecordDecl& d : e.dm_records) {
    DMRecord r = build_dm_record(d);
    if (!validate(r.weights).valid) throw InputError("DM record " + d.weights + " is not valid");
  }
  for (const ExpectedValue& x : e.expected) split_key(x.key);
}

}  // namespace orbicheck
