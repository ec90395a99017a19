#pragma once

#include <string>
#include <vector>

#include "cardguess/birthday.hpp"
#include "cardguess/deck.hpp"

namespace cardguess {

// Harmonic number H_k = 1 + 1/2 + ... + 1/k, with H_0 = 0. Compensated
// summation keeps the rounding error at the ulp scale.
double harmonic(long long k);

// Gamma function on x > 0 (relative accuracy better than 1e-10 on (0, 3]).
// Throws std::domain_error for x <= 0.
double gamma_function(double x);

struct approx_term {
  int index;
  double value;
};

// A closed-form approximation together with its per-term breakdown; the value
// is exactly the sum of the terms. error_order is a descriptive tag of the
// error scale, never used in computation.
struct approx_report {
  double value = 0.0;
  std::vector<approx_term> terms;
  std::string error_order;
};

// Best-strategy score approximation H_{m*} H_n + sum_{j=1}^{m*} ln gamma_j.
// The H_{m*} H_n part is reported as term index 0.
approx_report approx_best(const deck_spec& spec);

// Worst-strategy score approximation
//   sum_j Gamma((j+1)/j) / (gamma_j n^{1/j})
// over j = floor(m/2)+1 .. m, or from j = 1 when all_terms is set. Only even
// decks are supported (throws std::domain_error otherwise).
approx_report approx_worst(const deck_spec& spec, bool all_terms = false);

// Expected best-strategy score from survival curves:
//   sum_{j=0}^{m*-1} sum_{t=1}^{N} (1 - P(T_j >= t)) / t.
// curves must hold one curve per j = 0..m*-1 (any order), each covering
// t = 1..N; with exact curves this equals the exact expectation. Throws
// std::invalid_argument on a missing or incomplete curve.
double best_from_survival(const deck_spec& spec,
                          const std::vector<survival_curve>& curves);

// Expected worst-strategy score from top-down survival curves:
//   sum_{j=0}^{m-1} sum_{t=0}^{N-1} P(T_j >= t) / (N - t).
// Even decks only; curves per j = 0..m-1 covering t = 0..N-1. Exact curves
// give the exact expectation; e^{-lambda} curves give the semi-analytic
// estimate.
double worst_from_survival(const deck_spec& spec,
                           const std::vector<survival_curve>& curves);

}  // namespace cardguess
