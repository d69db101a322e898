#include "orbicheck/dm.hpp"

#include <algorithm>
#include <map>

#include "orbicheck/errors.hpp"

namespace orbicheck {

std::string to_string(Arithmeticity a) {
  switch (a) {
    case Arithmeticity::arithmetic:
      return "arithmetic";
    case Arithmeticity::nonarithmetic:
      return "nonarithmetic";
    case Arithmeticity::unknown:
      break;
  }
  return "unknown";
}

Arithmeticity parse_arithmeticity(std::string_view s) {
  if (s == "arithmetic") return Arithmeticity::arithmetic;
  if (s == "nonarithmetic") return Arithmeticity::nonarithmetic;
  if (s == "unknown") return Arithmeticity::unknown;
  throw InputError("unknown arithmeticity flag '" + std::string(s) + "'");
}

std::string to_string(IntClass c) {
  switch (c) {
    case IntClass::int_:
      return "INT";
    case IntClass::sigma_int_only:
      return "SigmaINT-only";
    case IntClass::neither:
      break;
  }
  return "neither";
}

DMWeights DMWeights::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  auto slash = s.rfind('/');
  if (slash == std::string::npos) throw InputError("DM weights '" + s + "': expected n1,...,nk/d");
  std::string nums = s.substr(0, slash), den = s.substr(slash + 1);
  if (!nums.empty() && nums.front() == '(') {
    if (nums.back() != ')') throw InputError("DM weights '" + s + "': unbalanced parenthesis");
    nums = nums.substr(1, nums.size() - 2);
  }
  DMWeights w;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = nums.find(',', start);
    Rat v = Rat::parse(nums.substr(start, comma - start));
    if (!v.is_integer()) throw InputError("DM weights '" + s + "': numerators must be integers");
    w.numerators.push_back(v.to_int());
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  Rat d = Rat::parse(den);
  if (!d.is_integer() || d.sign() <= 0)
    throw InputError("DM weights '" + s + "': denominator must be a positive integer");
  w.denominator = d.to_int();
  return w;
}

std::string DMWeights::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < numerators.size(); ++i)
    s += (i ? "," : "") + std::to_string(numerators[i]);
  return s + ")/" + std::to_string(denominator);
}

std::vector<Rat> DMWeights::mu() const {
  std::vector<Rat> out;
  for (long long n : numerators) out.emplace_back(n, denominator);
  return out;
}

DMValidation validate(const DMWeights& w) {
  DMValidation v;
  if (w.denominator <= 0) v.problems.push_back("denominator must be positive");
  if (w.numerators.empty()) v.problems.push_back("no weights");
  if (!v.problems.empty()) return v;
  for (const Rat& m : w.mu()) {
    v.sum += m;
    if (m.sign() <= 0 || m >= Rat(1)) v.problems.push_back("weight " + m.str() + " not in (0, 1)");
  }
  if (v.sum != Rat(2)) v.problems.push_back("sum " + v.sum.str() + " != 2");
  v.valid = v.problems.empty();
  return v;
}

namespace {

// Pairs whose weights both equal `relaxed` may be half-integral.
bool pairs_ok(const std::vector<Rat>& mu, const std::optional<Rat>& relaxed) {
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = i + 1; j < mu.size(); ++j) {
      Rat s = mu[i] + mu[j];
      if (s >= Rat(1)) continue;
      Rat inv = (Rat(1) - s).reciprocal();
      if (inv.is_integer()) continue;
      bool in_s = relaxed && mu[i] == *relaxed && mu[j] == *relaxed;
      if (in_s && (Rat(2) * inv).is_integer()) continue;
      return false;
    }
  return true;
}

}  // namespace

IntClass int_condition(const DMWeights& w) {
  DMValidation v = validate(w);
  if (!v.valid) throw InputError("DM weights " + w.str() + " are invalid: " + v.problems.front());
  std::vector<Rat> mu = w.mu();
  if (pairs_ok(mu, std::nullopt)) return IntClass::int_;
  std::map<Rat, int> classes;
  for (const Rat& m : mu) ++classes[m];
  for (const auto& [value, count] : classes)
    if (count >= 2 && pairs_ok(mu, value)) return IntClass::sigma_int_only;
  return IntClass::neither;
}

std::string QuotientSignature::str() const {
  std::string s = std::to_string(weights.size()) + " curves; weights {";
  for (std::size_t i = 0; i < weights.size(); ++i) s += (i ? "," : "") + weights[i].str();
  return s + "}; e_orb " + e_orb.str();
}

QuotientSignature make_signature(std::vector<Weight> weights, Rat e_orb) {
  std::sort(weights.begin(), weights.end());
  return QuotientSignature{std::move(weights), std::move(e_orb)};
}

}  // namespace orbicheck
