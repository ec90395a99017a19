#pragma once

#include <vector>

#include "cardguess/deck.hpp"

namespace cardguess {

// Scan orientation for record times and tuple counts. bottom_up scans
// cards[0], cards[1], ...; top_down scans from the top of the deck
// (cards.back() first), which is the orientation used when analyzing the
// worst-strategy game.
enum class scan_order { bottom_up, top_down };

// Record time T_j: the last time t such that no card type appears more than j
// times among the first t scanned cards. Requires 1 <= j <= max_mult - 1
// (throws std::domain_error otherwise).
int record_time(const shuffled_deck& deck, int j,
                scan_order order = scan_order::bottom_up);

// Tuple count W_j(t): the number of (j+1)-element position subsets within the
// first t scanned cards whose cards all share one type. Computed from per-type
// running counts as sum_i C(count_i, j+1). Requires 0 <= t <= N and
// 1 <= j <= max_mult - 1. W_j(t) == 0 exactly when T_j >= t.
long long tuple_count(const shuffled_deck& deck, int j, int t,
                      scan_order order = scan_order::bottom_up);

// The Poisson rate lambda = t^{j+1} beta_{j+1} / n^j approximating the law of
// W_j(t). Requires 1 <= j <= max_mult - 1 and t >= 0.
double lambda_stat(const deck_spec& spec, int j, long long t);

// e^{-lambda} approximation of the survival probability P(T_j >= t), together
// with the scale t/n of its error (the multiplying constant is not known).
struct survival_approximation {
  double value;
  double error_scale;
};
survival_approximation survival_approx(const deck_spec& spec, int j,
                                       long long t);

// Exact expectation of the tuple count:
//   E[W_j(t)] = C(t, j+1) * sum_i ff(m_i, j+1) / ff(N, j+1)
// with ff the falling factorial.
double expected_tuple_count(const deck_spec& spec, int j, long long t);

// Chernoff-type upper bound exp(-x^2 / (2 c mu)) with c = C(max_mult, j+1) and
// mu = E[W_j(t)]; valid as a bound on P(T_j >= t) for 0 <= x < mu when x is
// taken equal to mu - 0. Throws std::domain_error when mu <= 0 or x is outside
// [0, mu).
double chernoff_tail_bound(const deck_spec& spec, int j, long long t, double x);

// The lambda-parameterized exponential tail C * exp(-c_prime * lambda). The
// constants are existence-only in the underlying bound, so callers supply
// them.
double exponential_tail_bound(const deck_spec& spec, int j, long long t,
                              double big_c, double c_prime);

enum class curve_source { empirical, exact, approx };

// A survival curve t -> P(T_j >= t), tabulated on a time grid.
struct survival_curve {
  int j = 0;
  std::vector<int> times;
  std::vector<double> survival;
  curve_source source = curve_source::exact;

  // Value at time t; throws std::invalid_argument if t is not on the grid.
  double at(int t) const;
};

// The curve for j = 0, whose record time is identically zero: survival 1 at
// t = 0 and 0 for every t in 1..total_cards.
survival_curve record_time_zero_curve(long long total_cards);

// The e^{-lambda} approximate curve on the given grid.
survival_curve approx_survival_curve(const deck_spec& spec, int j,
                                     std::vector<int> times);

}  // namespace cardguess
