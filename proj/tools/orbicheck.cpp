// orbicheck command-line interface. Exit codes: 0 success, 1 a check failed, 2 input error.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbicheck/catalog.hpp"
#include "orbicheck/errors.hpp"

namespace {

using namespace orbicheck;
using json = nlohmann::ordered_json;

struct Options {
  bool machine = false;
  std::size_t max_cosets = 100000;
  std::string catalog_dir;
};

bool use_color() {
  const char* nc = std::getenv("NO_COLOR");
  if (nc && *nc) return false;
  return isatty(STDOUT_FILENO) != 0;
}

std::string verdict(bool ok) {
  static const bool color = use_color();
  std::string word = ok ? "PASS" : "FAIL";
  if (!color) return word;
  return (ok ? "\x1b[32m" : "\x1b[31m") + word + "\x1b[0m";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Catalog load_catalog(const Options& o) {
  return o.catalog_dir.empty() ? Catalog::embedded() : Catalog::from_directory(o.catalog_dir);
}

std::string int_class_text(IntClass c) {
  return c == IntClass::sigma_int_only ? "ΣINT-only" : to_string(c);
}

const DMRecord* find_record(const std::vector<DMRecord>& recs, const DMWeights& w) {
  for (const DMRecord& r : recs)
    if (r.weights == w) return &r;
  return nullptr;
}

// Recorded values for a weighting, i.e. expected entries whose first argument names it.
std::vector<const ExpectedValue*> recorded_for(const CatalogEntry& e, const std::string& weighting) {
  static const std::set<std::string> keys = {"c1_sq", "c2", "c2_disjoint", "bmy", "nakai",
                                             "L_sq", "L.C", "max_local_group"};
  std::vector<const ExpectedValue*> out;
  for (const ExpectedValue& x : e.expected) {
    auto [name, args] = split_key(x.key);
    if (keys.count(name) && !args.empty() && args[0] == weighting) out.push_back(&x);
  }
  return out;
}

int cmd_verify(const Options& o, const std::string& target, std::string weighting) {
  std::optional<Catalog> cat;
  CatalogEntry entry;
  if (std::filesystem::is_regular_file(target)) {
    entry = parse_entry(read_file(target), target);
  } else {
    cat = load_catalog(o);
    entry = cat->get(target);
  }
  Arrangement arr = build_surface(entry);
  if (weighting.empty()) {
    if (entry.weightings.empty()) throw InputError("entry '" + entry.id + "' has no weighting");
    weighting = entry.weightings.front().first;
  }
  WeightAssignment w = build_weighting(entry, arr, weighting);
  PairReport r = verify_pair(arr, w);
  const Rat three_c2 = Rat(3) * r.c2;

  bool recorded_ok = true;
  json recorded = json::array();
  std::vector<std::string> recorded_lines;
  // Recorded values are evaluated against the entry itself; a catalogue is only needed for keys
  // that reach other entries, which verify does not use.
  Catalog empty_cat(std::vector<CatalogEntry>{});
  for (const ExpectedValue* x : recorded_for(entry, weighting)) {
    std::string got = evaluate(cat ? *cat : empty_cat, entry, x->key);
    bool ok = got == x->value;
    recorded_ok = recorded_ok && ok;
    recorded.push_back({{"key", x->key}, {"value", got}, {"recorded", x->value},
                        {"provenance", to_string(x->provenance)}, {"anchor", x->anchor},
                        {"match", ok}});
    std::string line = "  " + x->key + " = " + got + "  " + (ok ? "matches" : "MISMATCH (recorded " + x->value + ")");
    if (!x->anchor.empty()) line += "  (recorded: " + x->anchor + ")";
    else line += "  (" + to_string(x->provenance) + ")";
    recorded_lines.push_back(line);
  }

  if (o.machine) {
    json j = {{"entry", entry.id},
              {"weighting", weighting},
              {"c1_sq", r.c1_sq.str()},
              {"c2", r.c2.str()},
              {"three_c2", three_c2.str()},
              {"bmy", r.bmy_equal},
              {"nakai", r.nakai.pass},
              {"L_sq", r.nakai.L_sq.str()}};
    json table = json::array();
    for (const auto& [id, v] : r.nakai.pairings)
      table.push_back({{"curve", arr.curve(id).name}, {"L.C", v.str()}});
    j["nakai_table"] = std::move(table);
    if (r.nakai.witness) j["witness"] = arr.curve(*r.nakai.witness).name;
    j["caveat"] = r.nakai.caveat;
    j["recorded"] = std::move(recorded);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << entry.id << " [" << weighting << "]\n";
    std::cout << "c1^2 = " << r.c1_sq << ", c2 = " << r.c2 << ", 3*c2 = " << three_c2
              << ", BMY: " << verdict(r.bmy_equal) << ", Nakai(declared): " << verdict(r.nakai.pass)
              << "\n";
    std::cout << "L^2 = " << r.nakai.L_sq << "\n";
    std::cout << "Nakai table (L = K + D):\n";
    std::size_t width = 5;
    for (const auto& [id, v] : r.nakai.pairings) width = std::max(width, arr.curve(id).name.size());
    for (const auto& [id, v] : r.nakai.pairings) {
      const std::string& n = arr.curve(id).name;
      std::cout << "  " << n << std::string(width - n.size() + 2, ' ') << "L.C = " << v << "\n";
    }
    if (r.nakai.witness) std::cout << "witness: " << arr.curve(*r.nakai.witness).name << "\n";
    std::cout << "caveat: " << r.nakai.caveat << "\n";
    if (!recorded_lines.empty()) {
      std::cout << "recorded values:\n";
      for (const std::string& l : recorded_lines) std::cout << l << "\n";
    }
  }
  return r.holds() && recorded_ok ? 0 : 1;
}

int cmd_quotient(const Options& o, const std::string& cover_id, const std::string& action) {
  Catalog cat = load_catalog(o);
  const CatalogEntry& cover = cat.get(cover_id);
  const ActionDecl& a = cover.action(action);
  Arrangement arr = build_surface(cover);
  QuotientReport r = run_quotient(cat, cover, action);
  std::vector<DMRecord> recs = cat.dm_records();
  QuotientSignature sig = r.plan.signature();
  bool ok = r.weights_match && (!r.multiplicativity || r.multiplicativity->holds);

  auto orbit_names = [&](const QuotientOrbit& orb) {
    std::string s = "{";
    for (std::size_t i = 0; i < orb.curves.size(); ++i)
      s += (i ? "," : "") + arr.curve(orb.curves[i]).name;
    return s + "}";
  };
  if (o.machine) {
    json orbits = json::array();
    for (const QuotientOrbit& orb : r.plan.orbits) {
      json names = json::array();
      for (CurveId c : orb.curves) names.push_back(arr.curve(c).name);
      orbits.push_back({{"curves", names},
                        {"cover_weight", orb.cover_weight ? orb.cover_weight->str() : "1"},
                        {"branch", orb.branch},
                        {"quotient_weight", orb.quotient_weight ? orb.quotient_weight->str() : "1"}});
    }
    json j = {{"entry", cover.id},
              {"action", action},
              {"group_order", r.plan.group_order},
              {"weighting", a.weighting},
              {"orbits", orbits},
              {"quotient_weights", weight_multiset(sig.weights)},
              {"cover_e_orb", r.plan.cover_e_orb.str()},
              {"quotient_e_orb", r.plan.expected_quotient_e_orb.str()}};
    if (a.quotient) {
      j["quotient_entry"] = a.quotient->entry;
      j["declared_quotient_weights"] = r.quotient_weights;
      j["weights_match"] = r.weights_match;
    }
    if (r.multiplicativity) {
      j["independent_quotient_e_orb"] = r.multiplicativity->quotient_e_orb.str();
      j["multiplicativity"] = r.multiplicativity->holds;
    }
    json dm = json::array();
    for (std::size_t i : r.dm_matches)
      dm.push_back({{"weights", recs[i].weights.str()}, {"flag", to_string(recs[i].flag)},
                    {"anchor", recs[i].anchor}});
    j["dm"] = std::move(dm);
    std::cout << j.dump(2) << "\n";
    return ok ? 0 : 1;
  }
  std::cout << cover.id << " / " << action << " (group order " << r.plan.group_order
            << ", weighting " << a.weighting << ")\n";
  for (const QuotientOrbit& orb : r.plan.orbits) {
    std::cout << "  orbit " << orbit_names(orb) << ": cover weight "
              << (orb.cover_weight ? orb.cover_weight->str() : "1") << ", branch " << orb.branch
              << " -> " << (orb.quotient_weight ? orb.quotient_weight->str() : "1 (not in locus)")
              << "\n";
  }
  std::cout << "quotient weights: " << weight_multiset(sig.weights);
  if (a.quotient)
    std::cout << "  vs " << a.quotient->entry << ": {" << [&] {
      std::string s;
      for (std::size_t i = 0; i < r.quotient_weights.size(); ++i)
        s += (i ? "," : "") + r.quotient_weights[i];
      return s;
    }() << "} " << verdict(r.weights_match);
  std::cout << "\n";
  if (r.multiplicativity) {
    std::cout << "e_orb: " << r.plan.cover_e_orb << " = " << r.plan.group_order << " × "
              << r.multiplicativity->quotient_e_orb << "  " << verdict(r.multiplicativity->holds)
              << "  (quotient value from " << a.quotient->entry << ")\n";
  } else {
    std::cout << "e_orb: " << r.plan.cover_e_orb << " = " << r.plan.group_order << " × "
              << r.plan.expected_quotient_e_orb << "  (quotient value from the cover)\n";
  }
  if (r.dm_matches.empty()) std::cout << "DM: no matching record\n";
  if (r.dm_matches.size() > 1) std::cout << "DM: " << r.dm_matches.size() << " candidates\n";
  for (std::size_t i : r.dm_matches) {
    std::cout << "DM" << recs[i].weights.str() << " [" << to_string(recs[i].flag) << "]";
    if (!recs[i].anchor.empty()) std::cout << "  (recorded: " << recs[i].anchor << ")";
    std::cout << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_coset(const Options& o, const std::string& spec, const std::vector<std::string>& words_in) {
  std::optional<Presentation> pres;
  std::vector<std::string> words = words_in;
  std::vector<std::string> notes;
  std::optional<std::string> target;
  if (!spec.empty() && spec.front() == '<') {
    pres = Presentation::parse(spec);
  } else {
    auto dot = spec.rfind('.');
    if (dot == std::string::npos)
      throw InputError("expected ENTRY.SUBGROUP or an inline presentation, got '" + spec + "'");
    Catalog cat = load_catalog(o);
    const CatalogEntry& e = cat.get(spec.substr(0, dot));
    const SubgroupDecl& s = e.subgroup(spec.substr(dot + 1));
    pres = Presentation::parse(e.presentation_text(s.presentation));
    if (words.empty()) words = s.words;
    target = s.target;
    for (const EntryFlag& f : e.flags) {
      auto [name, args] = split_key(f.key);
      if (!args.empty() && args[0] == s.name) notes.push_back(f.note);
    }
  }
  std::vector<Word> ws;
  for (const std::string& w : words) ws.push_back(pres->parse_word(w));
  if (ws.empty()) {
    // The trivial subgroup is not what anyone means here; use all generators instead.
    for (std::size_t g = 0; g < pres->generator_count(); ++g) ws.push_back({static_cast<int>(2 * g)});
  }
  EnumerationStats stats;
  auto res = todd_coxeter(*pres, ws, o.max_cosets, &stats);
  if (auto* ov = std::get_if<Overflow>(&res)) {
    if (o.machine)
      std::cout << json{{"overflow", true}, {"max_cosets", ov->limit}}.dump(2) << "\n";
    else
      std::cout << "overflow at " << ov->limit << " cosets, retry with --max-cosets\n";
    return 1;
  }
  const CosetTable& t = std::get<CosetTable>(res);
  auto shape = triangle_shape(*pres);
  std::optional<OrbifoldSignature> sig;
  Rat group_chi;
  std::vector<EllipticGenerator> ell;
  if (shape) {
    group_chi = triangle_chi((*shape)[0], (*shape)[1], (*shape)[2]);
    ell = triangle_elliptics(*pres, (*shape)[0], (*shape)[1], (*shape)[2]);
    sig = subgroup_signature(t, ell, group_chi);
  }
  bool ok = !target || (sig && sig->str() == *target);
  if (o.machine) {
    json j = {{"index", t.index}, {"cosets_defined", stats.defined}};
    json cycles = json::object();
    for (std::size_t g = 0; g < pres->generator_count(); ++g)
      cycles[std::string(1, pres->generators()[g])] = cycle_type(t.perms[g]);
    j["cycle_types"] = std::move(cycles);
    if (sig) {
      j["signature"] = sig->str();
      j["chi"] = sig->chi.str();
      j["group_chi"] = group_chi.str();
    }
    if (target) j["target"] = *target;
    j["notes"] = notes;
    std::cout << j.dump(2) << "\n";
    return ok ? 0 : 1;
  }
  std::cout << "index " << t.index;
  if (sig)
    std::cout << "; signature " << sig->str() << "; chi " << sig->chi << " = " << t.index
              << " × (" << group_chi << ")";
  std::cout << "\n";
  for (std::size_t g = 0; g < pres->generator_count(); ++g) {
    std::cout << "  " << pres->generators()[g] << ": cycle type [";
    auto ct = cycle_type(t.perms[g]);
    for (std::size_t i = 0; i < ct.size(); ++i) std::cout << (i ? "," : "") << ct[i];
    std::cout << "]\n";
  }
  if (target)
    std::cout << "target " << *target << ": " << verdict(sig && sig->str() == *target) << "\n";
  for (const std::string& n : notes) std::cout << "NOTE: " << n << "\n";
  return ok ? 0 : 1;
}

int cmd_dm(const Options& o, const std::string& text) {
  DMWeights w = DMWeights::parse(text);
  DMValidation v = validate(w);
  std::optional<IntClass> ic;
  if (v.valid) ic = int_condition(w);
  Catalog cat = load_catalog(o);
  std::vector<DMRecord> recs = cat.dm_records();
  const DMRecord* rec = find_record(recs, w);
  if (o.machine) {
    json j = {{"weights", w.str()}, {"valid", v.valid}, {"sum", v.sum.str()},
              {"problems", v.problems}};
    if (ic) j["int_class"] = to_string(*ic);
    j["flag"] = rec ? to_string(rec->flag) : "unknown";
    if (rec) j["anchor"] = rec->anchor;
    std::cout << j.dump(2) << "\n";
    return v.valid ? 0 : 1;
  }
  if (!v.valid) {
    std::cout << w.str() << ": invalid";
    for (const std::string& p : v.problems) std::cout << ": " << p;
    std::cout << "\n";
    return 1;
  }
  std::cout << w.str() << ": valid; " << int_class_text(*ic) << "; ";
  if (rec) {
    std::cout << to_string(rec->flag) << " (recorded";
    if (!rec->anchor.empty()) std::cout << ": " << rec->anchor;
    std::cout << ")\n";
  } else {
    std::cout << "arithmeticity unknown (not in the catalogue)\n";
  }
  return 0;
}

int cmd_list(const Options& o) {
  Catalog cat = load_catalog(o);
  if (o.machine) {
    json j = json::array();
    for (const CatalogEntry& e : cat.entries()) j.push_back({{"id", e.id}, {"description", e.description}});
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::size_t width = 0;
  for (const CatalogEntry& e : cat.entries()) width = std::max(width, e.id.size());
  for (const CatalogEntry& e : cat.entries())
    std::cout << e.id << std::string(width - e.id.size() + 2, ' ') << e.description << "\n";
  return 0;
}

// Evaluates every recorded value of the selected entries.
int cmd_check(const Options& o, const std::vector<std::string>& ids) {
  Catalog cat = load_catalog(o);
  std::vector<const CatalogEntry*> entries;
  if (ids.empty())
    for (const CatalogEntry& e : cat.entries()) entries.push_back(&e);
  else
    for (const std::string& id : ids) entries.push_back(&cat.get(id));
  bool ok = true;
  json out = json::array();
  for (const CatalogEntry* e : entries) {
    for (const ExpectedValue& x : e->expected) {
      std::string got = evaluate(cat, *e, x.key);
      bool match = got == x.value;
      ok = ok && match;
      if (o.machine) {
        out.push_back({{"entry", e->id}, {"key", x.key}, {"value", got}, {"recorded", x.value},
                       {"provenance", to_string(x.provenance)}, {"match", match}});
      } else {
        std::cout << e->id << "  " << x.key << " = " << got << "  " << verdict(match);
        if (!match) std::cout << " (recorded " << x.value << ")";
        std::cout << "  [" << to_string(x.provenance) << "]\n";
      }
    }
    if (!o.machine)
      for (const EntryFlag& f : e->flags) std::cout << e->id << "  NOTE " << f.key << ": " << f.note << "\n";
  }
  if (o.machine) std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_format(const std::string& path, bool in_place) {
  CatalogEntry e = parse_entry(read_file(path), path);
  std::string text = serialize(e);
  if (in_place) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw InputError("cannot write '" + path + "'");
  } else {
    std::cout << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier for ball-quotient orbifold constructions"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--machine", o.machine, "Emit JSON instead of the human report");
  app.add_option("--max-cosets", o.max_cosets, "Coset enumeration bound")->check(CLI::PositiveNumber);
  app.add_option("--catalog", o.catalog_dir, "Catalogue directory (default: the built-in catalogue)");

  std::string target, weighting;
  auto* verify = app.add_subcommand("verify", "Check BMY equality and Nakai positivity of a pair");
  verify->add_option("target", target, "Catalogue id or document path")->required();
  verify->add_option("-w,--weighting", weighting, "Weighting name (default: the first one)");

  std::string cover, action;
  auto* quotient = app.add_subcommand("quotient", "Quotient weights, multiplicativity, DM match");
  quotient->add_option("cover", cover, "Catalogue id of the cover")->required();
  quotient->add_option("action", action, "Action name")->required();

  std::string spec;
  std::vector<std::string> words;
  auto* coset = app.add_subcommand("coset", "Todd-Coxeter enumeration and subgroup signature");
  coset->add_option("subgroup", spec, "ENTRY.SUBGROUP or an inline presentation \"<a,b | ...>\"")
      ->required();
  coset->add_option("words", words, "Subgroup generator words (override the catalogue)");

  std::string dm_text;
  auto* dm = app.add_subcommand("dm", "Validate Deligne-Mostow weights and classify INT/SigmaINT");
  dm->add_option("weights", dm_text, "Weights such as 5,4,1,1,1/6")->required();

  auto* list = app.add_subcommand("list", "List catalogue entries");

  std::vector<std::string> ids;
  auto* check = app.add_subcommand("check", "Evaluate every recorded value of catalogue entries");
  check->add_option("ids", ids, "Entry ids (default: all)");

  std::string fmt_path;
  bool in_place = false;
  auto* format = app.add_subcommand("format", "Print a document in canonical form");
  format->add_option("path", fmt_path, "Document path")->required();
  format->add_flag("-i,--in-place", in_place, "Rewrite the file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(o, target, weighting);
    if (*quotient) return cmd_quotient(o, cover, action);
    if (*coset) return cmd_coset(o, spec, words);
    if (*dm) return cmd_dm(o, dm_text);
    if (*list) return cmd_list(o);
    if (*check) return cmd_check(o, ids);
    if (*format) return cmd_format(fmt_path, in_place);
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
