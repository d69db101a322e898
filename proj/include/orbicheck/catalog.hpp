#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbicheck/arrangement.hpp"
#include "orbicheck/bmy.hpp"
#include "orbicheck/dm.hpp"
#include "orbicheck/fp_group.hpp"
#include "orbicheck/quotient.hpp"
#include "orbicheck/rational.hpp"
#include "orbicheck/torus.hpp"
#include "orbicheck/torus_surface.hpp"

namespace orbicheck {

// Catalogue documents compiled into the library (see cmake/EmbedCatalog.cmake).
struct EmbeddedDocument {
  const char* id;
  const char* text;
};
const std::vector<EmbeddedDocument>& embedded_catalog();

// Where an expected value comes from: a quoted formula with an anchor, a trivial case, or a
// value computed here and cross-checked by a named oracle in the test suite.
enum class Provenance { quoted, trivial, derived };
std::string to_string(Provenance p);

struct ExpectedValue {
  std::string key;  // see evaluate()
  std::string value;
  Provenance provenance = Provenance::quoted;
  std::string anchor;  // verbatim formula for quoted values
  std::string oracle;  // required for derived values
  friend bool operator==(const ExpectedValue&, const ExpectedValue&) = default;
};

// A recorded disagreement or caveat attached to a key.
struct EntryFlag {
  std::string key;
  std::string note;
  friend bool operator==(const EntryFlag&, const EntryFlag&) = default;
};

struct CurveDecl {
  std::string name;
  long long genus = 0;
  Rat self_int;
  bool candidate = true;
  friend bool operator==(const CurveDecl&, const CurveDecl&) = default;
};

struct MeetDecl {
  std::string a, b;
  long long count = 0;
  friend bool operator==(const MeetDecl&, const MeetDecl&) = default;
};

struct CrossingDecl {
  std::string name;
  std::vector<std::string> curves;
  friend bool operator==(const CrossingDecl&, const CrossingDecl&) = default;
};

struct CanonicalDecl {
  bool combination = true;
  std::vector<std::pair<std::string, Rat>> terms;  // coefficients, or K.C when !combination
  Rat square;                                      // only when !combination
  friend bool operator==(const CanonicalDecl&, const CanonicalDecl&) = default;
};

// Either a declared crossing or an explicit list of curves through the point.
struct BlowupDecl {
  std::string exceptional;
  std::optional<std::string> crossing;
  std::vector<std::string> curves;
  friend bool operator==(const BlowupDecl&, const BlowupDecl&) = default;
};

struct ExplicitSurface {
  long long euler = 0;
  std::vector<CurveDecl> curves;
  std::vector<MeetDecl> intersections;
  std::vector<CrossingDecl> crossings;
  std::optional<CanonicalDecl> canonical;
  std::vector<BlowupDecl> blowups;
  std::vector<std::pair<std::string, std::string>> rename;
  friend bool operator==(const ExplicitSurface&, const ExplicitSurface&) = default;
};

// kind "horizontal" {c}, "vertical" {c}, "graph" {mu, offset}, "line" {a, b, z, w}
struct TorusCurveDecl {
  std::string name;
  std::string kind;
  std::vector<std::string> params;
  bool candidate = true;
  friend bool operator==(const TorusCurveDecl&, const TorusCurveDecl&) = default;
};

struct TorusPointDecl {
  std::string name;
  std::string z, w;
  friend bool operator==(const TorusPointDecl&, const TorusPointDecl&) = default;
};

// (z, w) -> M (z, w) + shift with M a 2x2 ring matrix. With `lattice`, the map lives on the
// torus R^4 / L' for the sublattice L' spanned by the columns.
struct AutoDecl {
  std::string name;
  std::array<std::array<std::string, 2>, 2> matrix;
  std::array<std::string, 2> shift{"0", "0"};
  std::optional<std::vector<std::vector<long long>>> lattice;
  friend bool operator==(const AutoDecl&, const AutoDecl&) = default;
};

struct GroupDecl {
  std::string name;
  std::vector<std::string> generators;
  std::size_t bound = 1000;
  friend bool operator==(const GroupDecl&, const GroupDecl&) = default;
};

struct TorusDecl {
  std::string name;  // empty for an entry's surface torus
  std::string ring;
  std::vector<TorusCurveDecl> curves;
  std::vector<TorusPointDecl> blowups;
  std::vector<TorusPointDecl> points;
  std::vector<AutoDecl> automorphisms;
  std::vector<GroupDecl> groups;
  friend bool operator==(const TorusDecl&, const TorusDecl&) = default;
};

struct QuotientRef {
  std::string entry;
  std::string weighting;
  friend bool operator==(const QuotientRef&, const QuotientRef&) = default;
};

// Either cycles plus declared branch orders, or a group on the entry's torus from which both
// are derived (declared branch orders must then agree).
struct ActionDecl {
  std::string name;
  std::string weighting;
  std::size_t group_order = 1;
  std::vector<Cycles> generators;
  std::optional<std::string> torus_group;
  std::vector<std::pair<std::string, long long>> branch;
  std::optional<QuotientRef> quotient;
  friend bool operator==(const ActionDecl&, const ActionDecl&) = default;
};

// Quotient data recorded without an arrangement, for singular quotients.
struct DeclaredQuotient {
  std::vector<std::string> weights;
  Rat e_orb;
  friend bool operator==(const DeclaredQuotient&, const DeclaredQuotient&) = default;
};

struct SearchDecl {
  std::size_t max_length = 6;
  std::size_t max_words = 2;
  std::size_t max_cosets = 200;
  friend bool operator==(const SearchDecl&, const SearchDecl&) = default;
};

struct SubgroupDecl {
  std::string name;
  std::string presentation;
  std::vector<std::string> words;
  std::optional<std::string> target;  // signature, e.g. "(g=0; 5,5,5)"
  std::optional<std::size_t> target_index;
  std::optional<SearchDecl> search;
  friend bool operator==(const SubgroupDecl&, const SubgroupDecl&) = default;
};

struct DMRecordDecl {
  std::string weights;
  std::string flag;
  std::string anchor;
  std::string source;
  std::optional<std::vector<std::string>> signature_weights;
  std::optional<Rat> signature_e_orb;
  friend bool operator==(const DMRecordDecl&, const DMRecordDecl&) = default;
};

struct CatalogEntry {
  std::string id;
  std::string description;
  std::optional<ExplicitSurface> surface;
  std::optional<TorusDecl> torus;
  std::vector<TorusDecl> tori;
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> weightings;
  std::vector<ActionDecl> actions;
  std::optional<DeclaredQuotient> declared_quotient;
  std::vector<std::pair<std::string, std::string>> presentations;
  std::vector<SubgroupDecl> subgroups;
  std::vector<DMRecordDecl> dm_records;
  std::vector<ExpectedValue> expected;
  std::vector<EntryFlag> flags;
  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;

  bool has_surface() const;
  const TorusDecl* find_torus(const std::string& name) const;
  const ActionDecl& action(const std::string& name) const;
  const SubgroupDecl& subgroup(const std::string& name) const;
  std::string presentation_text(const std::string& name) const;
  std::vector<const EntryFlag*> flags_for(const std::string& key) const;
};

// Strict parse: unknown keys, missing fields and wrong types raise ParseError (syntax, with
// line and column) or InputError naming the field path.
CatalogEntry parse_entry(std::string_view text, std::string_view source = "<input>");
// Canonical text; catalogue files are stored in this form.
std::string serialize(const CatalogEntry& e);

// Builders. All throw InputError on inconsistent data.
TorusSurface build_torus_surface(const TorusDecl& t);
QuadraticRing torus_ring(const TorusDecl& t);
AffineAuto build_auto(const TorusDecl& t, const AutoDecl& a);
FiniteGroup build_group(const TorusDecl& t, const GroupDecl& g);
// Products of automorphism names with integer powers and parentheses, e.g. "t4^-1 psi2 t4".
// A product "f g" applies g first. "id" is the identity.
AffineAuto eval_auto_expr(const TorusDecl& t, std::string_view text);
Arrangement build_surface(const CatalogEntry& e);
WeightAssignment build_weighting(const CatalogEntry& e, const Arrangement& arr,
                                 const std::string& name);
ActionOnArrangement build_action(const CatalogEntry& e, const Arrangement& arr,
                                 const ActionDecl& a);
DMRecord build_dm_record(const DMRecordDecl& d);

class Catalog {
 public:
  static Catalog embedded();
  static Catalog from_directory(const std::filesystem::path& dir);
  // Parses and checks every entry; InputError names the failing entry.
  explicit Catalog(std::vector<CatalogEntry> entries);

  const CatalogEntry& get(const std::string& id) const;  // InputError if absent
  bool contains(const std::string& id) const;
  const std::vector<CatalogEntry>& entries() const { return entries_; }
  // DM records from every entry, in catalogue order.
  std::vector<DMRecord> dm_records() const;

 private:
  std::vector<CatalogEntry> entries_;
};

// Builds everything an entry declares (surface, weightings, actions, groups, presentations,
// DM records) without running expensive enumerations.
void check_entry(const Catalog& cat, const CatalogEntry& e);

// Evaluates an expected-value key against an entry. Keys have the form name or name(args).
// Throws InputError for unknown keys.
std::string evaluate(const Catalog& cat, const CatalogEntry& e, const std::string& key);

// Splits "name(a, b)" into name and top-level arguments.
std::pair<std::string, std::vector<std::string>> split_key(const std::string& key);

struct QuotientReport {
  QuotientPlan plan;
  std::optional<MultiplicativityReport> multiplicativity;
  std::vector<std::string> quotient_weights;  // of the referenced quotient, sorted
  bool weights_match = true;
  std::vector<std::size_t> dm_matches;        // indices into Catalog::dm_records()
};

QuotientReport run_quotient(const Catalog& cat, const CatalogEntry& cover,
                            const std::string& action);

// "(g=1; 3)", "(g=2; -)"
OrbifoldSignature parse_orbifold_signature(std::string_view text);

// Sorted weight multiset "{3,9,18}".
std::string weight_multiset(std::vector<Weight> w);

}  // namespace orbicheck
