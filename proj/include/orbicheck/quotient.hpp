#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbicheck/arrangement.hpp"
#include "orbicheck/bmy.hpp"
#include "orbicheck/dm.hpp"

namespace orbicheck {

struct ActionOnArrangement {
  std::size_t group_order = 1;
  // Each generator is a full permutation of curve ids.
  std::vector<std::vector<CurveId>> generators;
  // Order of the subgroup fixing each curve pointwise; 1 by default.
  std::vector<long long> branch;
};

using Cycles = std::vector<std::vector<std::string>>;

// Generators given in cycle notation over curve names; unlisted curves are fixed.
ActionOnArrangement action_from_cycles(const Arrangement& arr, std::size_t group_order,
                                       const std::vector<Cycles>& generators,
                                       const std::map<std::string, long long>& branch);

// Checks bijectivity, that generators preserve genus, self-intersection and pairwise
// intersection numbers, that the generated permutation group has order dividing group_order,
// and that every branch order is >= 1, divides group_order and is constant on orbits.
void validate_action(const Arrangement& arr, const ActionOnArrangement& act);

struct QuotientOrbit {
  std::vector<CurveId> curves;
  std::optional<Weight> cover_weight;  // nullopt: weight 1
  long long branch = 1;
  std::optional<Weight> quotient_weight;  // nullopt: not in the quotient's orbifold locus
};

struct QuotientPlan {
  std::size_t group_order = 1;
  std::vector<QuotientOrbit> orbits;
  Rat cover_e_orb;
  Rat expected_quotient_e_orb;  // cover_e_orb / group_order
  QuotientSignature signature() const;
};

// InputError if an orbit mixes weights.
QuotientPlan quotient_weights(const Arrangement& arr, const WeightAssignment& w,
                              const ActionOnArrangement& act);

struct MultiplicativityReport {
  Rat cover_e_orb;
  std::size_t group_order = 1;
  Rat quotient_e_orb;
  bool holds = false;
};

MultiplicativityReport euler_multiplicativity_check(const Rat& cover_e_orb,
                                                    std::size_t group_order,
                                                    const Arrangement& quotient,
                                                    const WeightAssignment& quotient_w);

// Indices of every record whose signature matches. Several matches are all reported.
std::vector<std::size_t> dm_identify(const QuotientSignature& sig,
                                     const std::vector<DMRecord>& records);

}  // namespace orbicheck
