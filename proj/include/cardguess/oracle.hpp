#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "cardguess/birthday.hpp"
#include "cardguess/deck.hpp"
#include "cardguess/game.hpp"

namespace cardguess {

// Exact rational with 64-bit numerator/denominator, always normalized with a
// positive denominator. Intermediate products go through 128-bit arithmetic;
// overflow of the reduced result throws std::overflow_error. Sized for the
// small-instance enumerations here (N <= 8), not general use.
struct rational {
  long long num = 0;
  long long den = 1;

  rational() = default;
  rational(long long n, long long d);
  static rational of(long long n) { return {n, 1}; }

  rational operator+(const rational& o) const;
  rational operator-(const rational& o) const;
  rational operator*(const rational& o) const;
  rational operator/(const rational& o) const;
  bool operator==(const rational& o) const {
    return num == o.num && den == o.den;
  }
  rational abs() const { return {num < 0 ? -num : num, den}; }
  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

// A finite discrete law on non-negative integers. probs[i] is the mass at
// support[i]; support is strictly increasing.
struct pmf {
  std::vector<long long> support;
  std::vector<double> probs;

  double mean() const;
  double mass_at(long long k) const;  // 0 if k is off-support
};

// Total variation distance (1/2) sum_k |p(k) - q(k)| over the union of the
// supports.
double tv_distance(const pmf& p, const pmf& q);

// Poisson(lambda) probabilities at 0..k_max, with the residual tail mass
// attached to a sentinel bucket at k_max + 1. Throws std::domain_error for
// negative lambda.
pmf poisson_pmf(double lambda, int k_max);

// Exact expected score of greedy play, by memoized recursion over remaining
// count states with exchangeable transition weights:
//   E(c) = c_g / R + sum_i (c_i / R) E(c - e_i),
// g the greedy choice (max count for best; min count over all types, zeros
// included, for worst). Guarded by prod_i (m_i + 1) <= 1e7 (throws
// std::length_error beyond).
double exact_expected_score(const deck_spec& spec, strategy mode);

// Exact P(T_j >= t): the probability that no type count among the first t
// draws exceeds j, from a per-type convolution with multivariate
// hypergeometric weights. Orientation-free (the arrangement is uniform).
double exact_survival(const deck_spec& spec, int j, int t);

// Exact law of the tuple count W_j(t), from the same convolution with the
// accumulated sum_i C(d_i, j+1) carried as a state dimension.
pmf exact_tuple_count_pmf(const deck_spec& spec, int j, int t);

// Convenience: the exact survival curve on the full grid t = 0..N.
survival_curve exact_survival_curve(const deck_spec& spec, int j);

// Calls fn once per distinct arrangement of the multiset (lexicographic
// order). Intended for small N.
void for_each_arrangement(const deck_spec& spec,
                          const std::function<void(const std::vector<int>&)>& fn);

// Number of distinct arrangements N! / prod m_i!.
long long arrangement_count(const deck_spec& spec);

// The exactly enumerated law of the coupled deck along position set s, next to
// the exactly enumerated conditional law of the deck given that all cards at s
// share a type. Requires N <= 8 (throws std::length_error) and some
// multiplicity >= |s| (throws std::domain_error).
struct coupling_laws {
  std::map<std::vector<int>, rational> coupled;
  std::map<std::vector<int>, rational> conditional;
};
coupling_laws exact_coupling_laws(const deck_spec& spec,
                                  const std::vector<int>& positions);

// Exact TV distance between the two enumerated laws.
rational tv_distance(const coupling_laws& laws);

}  // namespace cardguess
