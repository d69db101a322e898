#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "orbicheck/rational.hpp"
#include "orbicheck/torus.hpp"  // Overflow

namespace orbicheck {

// Letter 2g is generator g, 2g + 1 its inverse.
using Word = std::vector<int>;

inline int inverse_letter(int x) { return x ^ 1; }
Word free_reduce(Word w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word power(const Word& w, long long k);  // k may be negative
// Replaces generator g by images[g].
Word substitute(const Word& w, const std::vector<Word>& images);

class Presentation {
 public:
  // Generator names are single lowercase letters; their capitals denote inverses.
  Presentation(std::vector<char> generators, std::vector<Word> relators);
  // "<a,b | a^2, b^3, (ab)^10>"
  static Presentation parse(std::string_view text);
  static Presentation triangle(long long p, long long q, long long r);

  std::size_t generator_count() const { return gens_.size(); }
  std::size_t letter_count() const { return 2 * gens_.size(); }
  const std::vector<char>& generators() const { return gens_; }
  const std::vector<Word>& relators() const { return rels_; }

  // Letters, capitals, parentheses and integer powers (negative allowed): "(ab)^2aBa", "a^-1".
  Word parse_word(std::string_view text) const;
  std::string format(const Word& w) const;
  std::string str() const;

 private:
  std::vector<char> gens_;
  std::vector<Word> rels_;
};

struct CosetTable {
  std::size_t index = 0;
  // perms[g][c]: coset c times generator g, 0-based (coset 0 is the subgroup).
  std::vector<std::vector<std::size_t>> perms;
  bool complete = true;

  std::size_t act(std::size_t coset, const Word& w) const;
  std::vector<std::size_t> permutation(const Word& w) const;
  friend bool operator==(const CosetTable&, const CosetTable&) = default;
};

// Renumbers cosets in order of first appearance scanning (coset, letter) row by row.
CosetTable standardize(const CosetTable& t);

// Relators fix every coset; subgroup words fix coset 0.
bool verify_table(const CosetTable& t, const Presentation& p, const std::vector<Word>& subgroup);

struct EnumerationStats {
  std::size_t defined = 0;
  std::size_t max_live = 0;
  std::size_t lookaheads = 0;
};

// HLT strategy with lookahead. The result is verified by permutation evaluation before it is
// returned (InconsistencyError on failure).
std::variant<CosetTable, Overflow> todd_coxeter(const Presentation& p,
                                                const std::vector<Word>& subgroup,
                                                std::size_t max_cosets,
                                                EnumerationStats* stats = nullptr);

// -1 + 1/p + 1/q + 1/r; std::domain_error unless hyperbolic with p, q, r >= 2.
Rat triangle_chi(long long p, long long q, long long r);

struct OrbifoldSignature {
  long long genus = 0;
  std::vector<long long> cones;  // sorted
  Rat chi;
  std::string str() const;  // "(g=1; 3)", "(g=2; -)"
  friend bool operator==(const OrbifoldSignature&, const OrbifoldSignature&) = default;
};

// chi of an orbifold of genus g with the given cone orders.
Rat orbifold_chi(long long genus, const std::vector<long long>& cones);

struct EllipticGenerator {
  Word word;
  long long order = 0;
};

// Cone points from cycle lengths of the elliptic generators; genus from
// chi(sub) = index * group_chi. InconsistencyError on a non-integral or negative genus.
OrbifoldSignature subgroup_signature(const CosetTable& t,
                                     const std::vector<EllipticGenerator>& elliptic,
                                     const Rat& group_chi);

// (p, q, r) when the presentation is <x, y | x^p, y^q, (xy)^r>.
std::optional<std::array<long long, 3>> triangle_shape(const Presentation& p);

// a, b, ab of orders p, q, r.
std::vector<EllipticGenerator> triangle_elliptics(const Presentation& p, long long ep,
                                                  long long eq, long long er);

// n (g - 1) + 1
long long etale_cover_genus(long long g, long long n);

std::vector<std::size_t> cycle_type(const std::vector<std::size_t>& perm);  // sorted lengths
// Schreier generators of the subgroup, freely reduced, trivial ones dropped.
std::vector<Word> schreier_generators(const CosetTable& t);
// Index of the intersection of the two subgroups (orbit of (0, 0) in the product action).
std::size_t intersection_index(const CosetTable& a, const CosetTable& b);

struct WordSearchParams {
  std::size_t max_length = 6;
  std::size_t max_words = 2;
  std::size_t max_cosets = 200;
  std::size_t target_index = 1;
  OrbifoldSignature target;
  std::vector<EllipticGenerator> elliptic;
  Rat group_chi;
};

struct WordSearchResult {
  std::vector<Word> words;
  CosetTable table;
  OrbifoldSignature signature;
  std::size_t enumerations = 0;
};

// Candidate words: freely reduced, shortlex ordered, with no power x^k of a generator exceeding
// half the order given by a relator x^m (x^(m/2) only with the positive letter), and not
// cyclically a power of an elliptic generator word when the target has no cone points of that
// order. Tuples are explored depth first in candidate order; a branch is cut once its subgroup
// has finite index below the target, or index equal to the target with the wrong signature.
std::optional<WordSearchResult> search_subgroup_words(const Presentation& p,
                                                      const WordSearchParams& params);

std::vector<Word> candidate_words(const Presentation& p, const WordSearchParams& params);

}  // namespace orbicheck
