#include "orbicheck/fp_group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "orbicheck/errors.hpp"

namespace orbicheck {

Word free_reduce(Word w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == inverse_letter(x))
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = inverse_letter(x);
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return free_reduce(std::move(w));
}

Word power(const Word& w, long long k) {
  Word base = k < 0 ? inverse(w) : w;
  Word out;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i) out.insert(out.end(), base.begin(), base.end());
  return free_reduce(std::move(out));
}

Word substitute(const Word& w, const std::vector<Word>& images) {
  Word out;
  for (int x : w) {
    std::size_t g = static_cast<std::size_t>(x / 2);
    if (g >= images.size()) throw InputError("substitution: no image for a generator");
    const Word img = (x & 1) ? inverse(images[g]) : images[g];
    out.insert(out.end(), img.begin(), img.end());
  }
  return free_reduce(std::move(out));
}

Presentation::Presentation(std::vector<char> generators, std::vector<Word> relators)
    : gens_(std::move(generators)) {
  std::set<char> seen;
  for (char g : gens_)
    if (!std::islower(static_cast<unsigned char>(g)) || !seen.insert(g).second)
      throw InputError("generator names must be distinct lowercase letters");
  for (Word& r : relators) {
    for (int x : r)
      if (x < 0 || static_cast<std::size_t>(x) >= letter_count())
        throw InputError("relator uses an unknown generator");
    r = free_reduce(std::move(r));
    if (!r.empty()) rels_.push_back(std::move(r));
  }
}

namespace {

class WordParser {
 public:
  WordParser(const std::vector<char>& gens, std::string_view s) : gens_(gens), s_(s) {}

  Word parse() {
    Word w = sequence();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return free_reduce(std::move(w));
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("word '" + std::string(s_) + "': " + why, 1, pos_ + 1);
  }
  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '*')) ++pos_;
  }
  Word sequence() {
    Word w;
    for (;;) {
      skip();
      if (pos_ == s_.size() || s_[pos_] == ')') return w;
      Word f = atom();
      skip();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        f = power(f, exponent());
      }
      w.insert(w.end(), f.begin(), f.end());
    }
  }
  long long exponent() {
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an exponent");
    if (pos_ - start > 6) fail("exponent too large");
    long long k = std::stoll(std::string(s_.substr(start, pos_ - start)));
    return neg ? -k : k;
  }
  Word atom() {
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Word w = sequence();
      if (pos_ == s_.size() || s_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return w;
    }
    if (c == '1') {
      ++pos_;
      return {};
    }
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto it = std::find(gens_.begin(), gens_.end(), lower);
    if (it == gens_.end()) fail("unknown generator '" + std::string(1, c) + "'");
    ++pos_;
    int g = static_cast<int>(it - gens_.begin());
    return {std::isupper(static_cast<unsigned char>(c)) ? 2 * g + 1 : 2 * g};
  }

  const std::vector<char>& gens_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

Word Presentation::parse_word(std::string_view text) const {
  return WordParser(gens_, text).parse();
}

Presentation Presentation::parse(std::string_view text) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '<' || s.back() != '>')
    throw ParseError("presentation must be written <gens | relators>", 1, 1);
  auto bar = s.find('|');
  if (bar == std::string::npos) throw ParseError("presentation needs '|'", 1, 1);
  std::vector<char> gens;
  std::string g = s.substr(1, bar - 1);
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = g.find(',', start);
    std::string name = trim(std::string_view(g).substr(start, comma - start));
    if (name.size() != 1)
      throw ParseError("generator names must be single letters", 1, 2 + start);
    gens.push_back(name[0]);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  std::vector<Word> rels;
  std::string r = s.substr(bar + 1, s.size() - bar - 2);
  start = 0;
  Presentation tmp(gens, {});
  for (;;) {
    std::size_t comma = r.find(',', start);
    std::string rel = trim(std::string_view(r).substr(start, comma - start));
    if (!rel.empty()) {
      try {
        rels.push_back(tmp.parse_word(rel));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), 1, bar + 2 + start + e.column());
      }
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Presentation(std::move(gens), std::move(rels));
}

Presentation Presentation::triangle(long long p, long long q, long long r) {
  if (p < 2 || q < 2 || r < 2) throw InputError("triangle group orders must be at least 2");
  Word a{0}, b{2};
  return Presentation({'a', 'b'}, {power(a, p), power(b, q), power(concat(a, b), r)});
}

std::string Presentation::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (int x : w) {
    char c = gens_[static_cast<std::size_t>(x / 2)];
    s += (x & 1) ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
  }
  return s;
}

std::string Presentation::str() const {
  std::string s = "<";
  for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? "," : "") + std::string(1, gens_[i]);
  s += " | ";
  for (std::size_t i = 0; i < rels_.size(); ++i) s += (i ? ", " : "") + format(rels_[i]);
  return s + ">";
}

std::size_t CosetTable::act(std::size_t coset, const Word& w) const {
  for (int x : w) {
    const auto& p = perms[static_cast<std::size_t>(x / 2)];
    if (x & 1) {
      coset = static_cast<std::size_t>(std::find(p.begin(), p.end(), coset) - p.begin());
    } else {
      coset = p[coset];
    }
  }
  return coset;
}

std::vector<std::size_t> CosetTable::permutation(const Word& w) const {
  // Compose generator permutations; inverses precomputed.
  std::vector<std::vector<std::size_t>> inv(perms.size(), std::vector<std::size_t>(index));
  for (std::size_t g = 0; g < perms.size(); ++g)
    for (std::size_t c = 0; c < index; ++c) inv[g][perms[g][c]] = c;
  std::vector<std::size_t> out(index);
  for (std::size_t c = 0; c < index; ++c) {
    std::size_t d = c;
    for (int x : w) d = (x & 1) ? inv[x / 2][d] : perms[x / 2][d];
    out[c] = d;
  }
  return out;
}

CosetTable standardize(const CosetTable& t) {
  const std::size_t ng = t.perms.size();
  std::vector<std::vector<std::size_t>> inv(ng, std::vector<std::size_t>(t.index));
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t c = 0; c < t.index; ++c) inv[g][t.perms[g][c]] = c;
  const std::size_t none = t.index;
  std::vector<std::size_t> newnum(t.index, none), order;
  newnum[0] = 0;
  order.push_back(0);
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t x = 0; x < 2 * ng; ++x) {
      std::size_t d = (x & 1) ? inv[x / 2][order[k]] : t.perms[x / 2][order[k]];
      if (newnum[d] == none) {
        newnum[d] = order.size();
        order.push_back(d);
      }
    }
  if (order.size() != t.index) throw InputError("coset table is not transitive");
  CosetTable s;
  s.index = t.index;
  s.complete = t.complete;
  s.perms.assign(ng, std::vector<std::size_t>(t.index));
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t c = 0; c < t.index; ++c) s.perms[g][newnum[c]] = newnum[t.perms[g][c]];
  return s;
}

bool verify_table(const CosetTable& t, const Presentation& p, const std::vector<Word>& subgroup) {
  if (t.perms.size() != p.generator_count()) return false;
  for (const auto& perm : t.perms) {
    if (perm.size() != t.index) return false;
    std::vector<bool> hit(t.index, false);
    for (std::size_t v : perm) {
      if (v >= t.index || hit[v]) return false;
      hit[v] = true;
    }
  }
  for (const Word& r : p.relators()) {
    auto perm = t.permutation(r);
    for (std::size_t c = 0; c < t.index; ++c)
      if (perm[c] != c) return false;
  }
  for (const Word& w : subgroup)
    if (t.act(0, w) != 0) return false;
  return true;
}

namespace {

constexpr long kUndef = -1;

struct OverflowSignal {};

class Enumerator {
 public:
  Enumerator(const Presentation& p, std::size_t max_cosets)
      : nl_(p.letter_count()), rels_(p.relators()), max_(max_cosets) {
    new_coset();
  }

  void run(const std::vector<Word>& subgroup) {
    for (const Word& w : subgroup) scan_and_fill(0, w);
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      for (const Word& r : rels_) {
        if (!live(c)) break;
        scan_and_fill(c, r);
      }
      if (!live(c)) continue;
      for (std::size_t x = 0; x < nl_ && live(c); ++x)
        if (at(c, x) == kUndef) define(c, x);
    }
  }

  CosetTable table(std::size_t ngens) const {
    std::vector<std::size_t> newnum(parent_.size(), 0);
    std::size_t n = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c)
      if (live(c)) newnum[c] = n++;
    CosetTable t;
    t.index = n;
    t.perms.assign(ngens, std::vector<std::size_t>(n));
    for (std::size_t c = 0; c < parent_.size(); ++c)
      if (live(c))
        for (std::size_t g = 0; g < ngens; ++g)
          t.perms[g][newnum[c]] = newnum[static_cast<std::size_t>(at(c, 2 * g))];
    return t;
  }

  EnumerationStats stats;

 private:
  long& at(std::size_t c, std::size_t x) { return table_[c * nl_ + x]; }
  long at(std::size_t c, std::size_t x) const { return table_[c * nl_ + x]; }
  bool live(std::size_t c) const { return parent_[c] == c; }

  std::size_t new_coset() {
    std::size_t d = parent_.size();
    parent_.push_back(d);
    table_.resize(table_.size() + nl_, kUndef);
    ++live_count_;
    ++stats.defined;
    stats.max_live = std::max(stats.max_live, live_count_);
    return d;
  }

  // A lookahead may kill c or fill the slot; the caller re-reads the table afterwards.
  void define(std::size_t c, std::size_t x) {
    if (live_count_ >= max_) {
      lookahead();
      if (live_count_ >= max_) throw OverflowSignal{};
      if (!live(c) || at(c, x) != kUndef) return;
    }
    // Dead cosets keep their slots; cap the total so memory stays bounded.
    if (parent_.size() >= 16 * max_ + 1024) throw OverflowSignal{};
    std::size_t d = new_coset();
    at(c, x) = static_cast<long>(d);
    at(d, x ^ 1) = static_cast<long>(c);
  }

  void lookahead() {
    ++stats.lookaheads;
    for (std::size_t c = 0; c < parent_.size(); ++c)
      for (const Word& r : rels_) {
        if (!live(c)) break;
        scan(c, r);
      }
  }

  void scan_and_fill(std::size_t c, const Word& w) { scan_impl(c, w, true); }
  void scan(std::size_t c, const Word& w) { scan_impl(c, w, false); }

  void scan_impl(std::size_t c, const Word& w, bool fill) {
    if (w.empty()) return;
    std::size_t f = c, b = c;
    std::size_t i = 0, j = w.size();  // w[i..j) unresolved
    for (;;) {
      while (i < j && at(f, static_cast<std::size_t>(w[i])) != kUndef)
        f = static_cast<std::size_t>(at(f, static_cast<std::size_t>(w[i++])));
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && at(b, static_cast<std::size_t>(w[j - 1] ^ 1)) != kUndef)
        b = static_cast<std::size_t>(at(b, static_cast<std::size_t>(w[--j] ^ 1)));
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        at(f, static_cast<std::size_t>(w[i])) = static_cast<long>(b);
        at(b, static_cast<std::size_t>(w[i] ^ 1)) = static_cast<long>(f);
        return;
      }
      if (!fill) return;
      define(f, static_cast<std::size_t>(w[i]));
      f = rep(f);
      b = rep(b);
    }
  }

  std::size_t rep(std::size_t k) {
    std::size_t r = k;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[k] != r) {
      std::size_t next = parent_[k];
      parent_[k] = r;
      k = next;
    }
    return r;
  }

  void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
    std::size_t a = rep(k), b = rep(l);
    if (a == b) return;
    std::size_t lo = std::min(a, b), hi = std::max(a, b);
    parent_[hi] = lo;
    --live_count_;
    queue.push_back(hi);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::vector<std::size_t> queue;
    merge(a, b, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t g = queue[qi];
      for (std::size_t x = 0; x < nl_; ++x) {
        if (at(g, x) == kUndef) continue;
        std::size_t d = static_cast<std::size_t>(at(g, x));
        at(d, x ^ 1) = kUndef;
        std::size_t mu = rep(g), nu = rep(d);
        if (at(mu, x) != kUndef) {
          merge(nu, static_cast<std::size_t>(at(mu, x)), queue);
        } else if (at(nu, x ^ 1) != kUndef) {
          merge(mu, static_cast<std::size_t>(at(nu, x ^ 1)), queue);
        } else {
          at(mu, x) = static_cast<long>(nu);
          at(nu, x ^ 1) = static_cast<long>(mu);
        }
      }
    }
  }

  std::size_t nl_;
  const std::vector<Word>& rels_;
  std::size_t max_;
  std::vector<long> table_;
  std::vector<std::size_t> parent_;
  std::size_t live_count_ = 0;
};

}  // namespace

std::variant<CosetTable, Overflow> todd_coxeter(const Presentation& p,
                                                const std::vector<Word>& subgroup,
                                                std::size_t max_cosets,
                                                EnumerationStats* stats) {
  if (max_cosets < 1) throw InputError("max_cosets must be at least 1");
  for (const Word& w : subgroup)
    for (int x : w)
      if (x < 0 || static_cast<std::size_t>(x) >= p.letter_count())
        throw InputError("subgroup word uses an unknown generator");
  Enumerator e(p, max_cosets);
  try {
    e.run(subgroup);
  } catch (const OverflowSignal&) {
    if (stats) *stats = e.stats;
    return Overflow{max_cosets};
  }
  if (stats) *stats = e.stats;
  CosetTable t = e.table(p.generator_count());
  if (!verify_table(t, p, subgroup))
    throw InconsistencyError("coset table failed relator verification");
  return t;
}

Rat triangle_chi(long long p, long long q, long long r) {
  if (p < 2 || q < 2 || r < 2) throw std::domain_error("triangle group orders must be >= 2");
  Rat s = Rat(1, p) + Rat(1, q) + Rat(1, r);
  if (s >= Rat(1)) throw std::domain_error("triangle group is not hyperbolic");
  return s - Rat(1);
}

std::string OrbifoldSignature::str() const {
  std::string s = "(g=" + std::to_string(genus) + "; ";
  if (cones.empty()) return s + "-)";
  for (std::size_t i = 0; i < cones.size(); ++i) s += (i ? "," : "") + std::to_string(cones[i]);
  return s + ")";
}

Rat orbifold_chi(long long genus, const std::vector<long long>& cones) {
  Rat chi(2 - 2 * genus);
  for (long long m : cones) chi -= Rat(1) - Rat(1, m);
  return chi;
}

std::vector<std::size_t> cycle_type(const std::vector<std::size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::vector<std::size_t> lengths;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t c = s; !seen[c]; c = perm[c]) {
      seen[c] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

OrbifoldSignature subgroup_signature(const CosetTable& t,
                                     const std::vector<EllipticGenerator>& elliptic,
                                     const Rat& group_chi) {
  OrbifoldSignature sig;
  for (const EllipticGenerator& e : elliptic) {
    for (std::size_t len : cycle_type(t.permutation(e.word))) {
      long long l = static_cast<long long>(len);
      if (e.order % l != 0)
        throw InconsistencyError("cycle length " + std::to_string(l) +
                                 " does not divide the elliptic order " + std::to_string(e.order));
      if (l < e.order) sig.cones.push_back(e.order / l);
    }
  }
  std::sort(sig.cones.begin(), sig.cones.end());
  sig.chi = Rat(static_cast<long long>(t.index)) * group_chi;
  // 2 - 2g = chi + sum(1 - 1/m)
  Rat cone_sum = Rat(2) - orbifold_chi(0, sig.cones);
  Rat twice_genus = Rat(2) - sig.chi - cone_sum;
  if (!twice_genus.is_integer() || twice_genus.to_int() % 2 != 0 || twice_genus.sign() < 0)
    throw InconsistencyError("Riemann-Hurwitz gives non-integral genus " +
                             (twice_genus / Rat(2)).str());
  sig.genus = twice_genus.to_int() / 2;
  if (orbifold_chi(sig.genus, sig.cones) != sig.chi)
    throw InconsistencyError("orbifold Euler characteristic mismatch");
  return sig;
}

std::vector<EllipticGenerator> triangle_elliptics(const Presentation& p, long long ep,
                                                  long long eq, long long er) {
  if (p.generator_count() != 2) throw InputError("triangle groups have two generators");
  return {{{0}, ep}, {{2}, eq}, {{0, 2}, er}};
}

long long etale_cover_genus(long long g, long long n) {
  if (g < 1 || n < 1) throw InputError("etale cover genus needs g >= 1 and n >= 1");
  return checked_add(checked_mul(n, g - 1), 1);
}

std::vector<Word> schreier_generators(const CosetTable& t) {
  // Spanning tree by breadth-first search over generator letters.
  const std::size_t ng = t.perms.size();
  std::vector<std::vector<std::size_t>> inv(ng, std::vector<std::size_t>(t.index));
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t c = 0; c < t.index; ++c) inv[g][t.perms[g][c]] = c;
  std::vector<std::optional<Word>> rep(t.index);
  rep[0] = Word{};
  std::vector<std::size_t> order{0};
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t x = 0; x < 2 * ng; ++x) {
      std::size_t d = (x & 1) ? inv[x / 2][order[k]] : t.perms[x / 2][order[k]];
      if (!rep[d]) {
        rep[d] = concat(*rep[order[k]], Word{static_cast<int>(x)});
        order.push_back(d);
      }
    }
  std::set<Word> seen;
  std::vector<Word> out;
  for (std::size_t c = 0; c < t.index; ++c)
    for (std::size_t g = 0; g < ng; ++g) {
      Word w = concat(concat(*rep[c], Word{static_cast<int>(2 * g)}),
                      inverse(*rep[t.perms[g][c]]));
      if (!w.empty() && seen.insert(w).second) out.push_back(w);
    }
  return out;
}

std::size_t intersection_index(const CosetTable& a, const CosetTable& b) {
  if (a.perms.size() != b.perms.size()) throw InputError("tables over different generators");
  std::set<std::pair<std::size_t, std::size_t>> seen{{0, 0}};
  std::vector<std::pair<std::size_t, std::size_t>> queue{{0, 0}};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (std::size_t g = 0; g < a.perms.size(); ++g) {
      std::pair<std::size_t, std::size_t> next{a.perms[g][queue[k].first],
                                               b.perms[g][queue[k].second]};
      if (seen.insert(next).second) queue.push_back(next);
    }
  return seen.size();
}

namespace {

// Rotations of the cyclic reduction of w.
std::vector<Word> cyclic_forms(Word w) {
  w = free_reduce(std::move(w));
  while (w.size() >= 2 && w.front() == inverse_letter(w.back())) {
    w.erase(w.begin());
    w.pop_back();
  }
  std::vector<Word> out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    Word r(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
    out.push_back(std::move(r));
  }
  return out;
}

// Generator g has a power relator g^m: returns m, else 0.
std::vector<long long> power_orders(const Presentation& p) {
  std::vector<long long> m(p.generator_count(), 0);
  for (const Word& r : p.relators()) {
    if (r.empty()) continue;
    bool uniform = std::all_of(r.begin(), r.end(), [&](int x) { return x == r[0]; });
    if (uniform) m[static_cast<std::size_t>(r[0] / 2)] = static_cast<long long>(r.size());
  }
  return m;
}

bool power_reduced(const Word& w, const std::vector<long long>& orders) {
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    long long run = static_cast<long long>(j - i);
    long long m = orders[static_cast<std::size_t>(w[i] / 2)];
    if (m > 0) {
      if (2 * run > m) return false;
      if (2 * run == m && (w[i] & 1)) return false;
    }
    i = j;
  }
  return true;
}

}  // namespace

std::vector<Word> candidate_words(const Presentation& p, const WordSearchParams& params) {
  std::vector<long long> orders = power_orders(p);
  std::set<Word> forbidden;
  for (const EllipticGenerator& e : params.elliptic)
    for (long long k = 1; k < e.order; ++k) {
      long long ord = e.order / std::gcd(e.order, k);
      bool allowed = std::any_of(params.target.cones.begin(), params.target.cones.end(),
                                 [&](long long c) { return c % ord == 0; });
      if (allowed) continue;
      for (long long s : {k, -k})
        for (Word& f : cyclic_forms(power(e.word, s))) forbidden.insert(std::move(f));
    }
  std::vector<Word> out;
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= params.max_length; ++len) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (int x = 0; x < static_cast<int>(p.letter_count()); ++x) {
        if (!w.empty() && w.back() == inverse_letter(x)) continue;
        Word v = w;
        v.push_back(x);
        if (!power_reduced(v, orders)) continue;
        next.push_back(v);
      }
    for (const Word& w : next) {
      auto forms = cyclic_forms(w);
      bool bad = forms.empty() || std::any_of(forms.begin(), forms.end(), [&](const Word& f) {
                   return forbidden.count(f) != 0;
                 });
      if (!bad) out.push_back(w);
    }
    layer = std::move(next);
  }
  return out;
}

namespace {

struct Searcher {
  const Presentation& p;
  const WordSearchParams& params;
  std::vector<Word> pool;
  std::vector<Word> chosen;
  std::size_t enumerations = 0;
  std::optional<WordSearchResult> found;

  void dfs(std::size_t from) {
    for (std::size_t k = from; k < pool.size() && !found; ++k) {
      chosen.push_back(pool[k]);
      ++enumerations;
      auto r = todd_coxeter(p, chosen, params.max_cosets);
      bool extend = true;
      if (auto* t = std::get_if<CosetTable>(&r)) {
        if (t->index < params.target_index) {
          extend = false;
        } else if (t->index == params.target_index) {
          extend = false;
          OrbifoldSignature sig = subgroup_signature(*t, params.elliptic, params.group_chi);
          if (sig == params.target) found = WordSearchResult{chosen, *t, sig, enumerations};
        }
      }
      if (extend && chosen.size() < params.max_words) dfs(k + 1);
      chosen.pop_back();
    }
  }
};

}  // namespace

std::optional<WordSearchResult> search_subgroup_words(const Presentation& p,
                                                      const WordSearchParams& params) {
  Searcher s{p, params, candidate_words(p, params), {}, 0, std::nullopt};
  s.dfs(0);
  if (s.found) s.found->enumerations = s.enumerations;
  return s.found;
}

std::optional<std::array<long long, 3>> triangle_shape(const Presentation& p) {
  if (p.generator_count() != 2 || p.relators().size() != 3) return std::nullopt;
  auto power_of = [](const Word& w, const Word& unit) -> long long {
    if (unit.empty() || w.size() % unit.size() != 0) return 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] != unit[i % unit.size()]) return 0;
    return static_cast<long long>(w.size() / unit.size());
  };
  long long a = power_of(p.relators()[0], {0});
  long long b = power_of(p.relators()[1], {2});
  long long c = power_of(p.relators()[2], {0, 2});
  if (a < 2 || b < 2 || c < 2) return std::nullopt;
  return std::array<long long, 3>{a, b, c};
}

}  // namespace orbicheck
