#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbicheck/bmy.hpp"
#include "orbicheck/rational.hpp"

namespace orbicheck {

enum class Arithmeticity { arithmetic, nonarithmetic, unknown };
enum class IntClass { int_, sigma_int_only, neither };

std::string to_string(Arithmeticity a);
Arithmeticity parse_arithmeticity(std::string_view s);
std::string to_string(IntClass c);

// mu_i = numerators[i] / denominator
struct DMWeights {
  std::vector<long long> numerators;
  long long denominator = 1;

  // "5,4,1,1,1/6" or "(5,4,1,1,1)/6"
  static DMWeights parse(std::string_view text);
  std::string str() const;  // "(5,4,1,1,1)/6"
  std::vector<Rat> mu() const;
  friend bool operator==(const DMWeights&, const DMWeights&) = default;
};

struct DMValidation {
  bool valid = false;
  Rat sum;
  std::vector<std::string> problems;
};

DMValidation validate(const DMWeights& w);

// INT: (1 - mu_i - mu_j)^-1 in Z for all i != j with mu_i + mu_j < 1.
// Sigma-INT: as INT, except that for pairs inside one class S of equal weights the value may be
// a half-integer. Requires valid weights (InputError otherwise).
IntClass int_condition(const DMWeights& w);

// Data matched against a quotient: orbifold curve count (weights.size()), weights, e_orb.
struct QuotientSignature {
  std::vector<Weight> weights;  // sorted
  Rat e_orb;
  std::string str() const;
  friend bool operator==(const QuotientSignature&, const QuotientSignature&) = default;
};

QuotientSignature make_signature(std::vector<Weight> weights, Rat e_orb);

struct DMRecord {
  DMWeights weights;
  Arithmeticity flag = Arithmeticity::unknown;
  std::string anchor;  // quoted formula backing the flag
  std::string source;
  std::optional<QuotientSignature> signature;
  friend bool operator==(const DMRecord&, const DMRecord&) = default;
};

}  // namespace orbicheck
