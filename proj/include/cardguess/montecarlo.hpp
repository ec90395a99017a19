#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cardguess/birthday.hpp"
#include "cardguess/deck.hpp"
#include "cardguess/game.hpp"

namespace cardguess {

// Summary of one Monte Carlo batch. Per-trial statistics are integers and are
// accumulated exactly, so a summary depends only on the inputs and the seed,
// never on thread count or scheduling.
struct sim_summary {
  long long trials = 0;
  double mean = 0.0;
  double sample_std = 0.0;  // unbiased sample standard deviation
  double std_error = 0.0;   // sample_std / sqrt(trials)
  std::uint64_t seed = 0;
  deck_spec spec;
  std::string target;
};

// Mean score of greedy play over `trials` independent shuffles. The stream of
// trial k is derived from (seed, k). threads = 0 picks the hardware
// concurrency.
sim_summary run_score_trials(const deck_spec& spec, strategy mode,
                             long long trials, std::uint64_t seed,
                             int threads = 0);

// Greedy score of an explicit draw sequence (first draw first), through the
// same incremental tracker the trial runner uses; equals
// play(deck, mode).score when draws is the deck read top-down. The sequence
// must be an arrangement of the spec's multiset.
long long greedy_score(const deck_spec& spec, std::span<const int> draws,
                       strategy mode);

// Empirical survival curve: the fraction of shuffles with T_j >= t for each
// grid time. One scan per shuffle computes T_j once, so each sampled curve is
// exactly non-increasing. Grid times must lie in [0, N].
survival_curve estimate_survival(const deck_spec& spec, int j,
                                 std::vector<int> t_grid, long long trials,
                                 std::uint64_t seed,
                                 scan_order order = scan_order::bottom_up,
                                 int threads = 0);

// Joint survival P(T_1 >= t_1, ..., T_k >= t_k) estimated empirically, next to
// the product of the e^{-lambda_j} marginal approximations. times must be
// sorted (throws std::invalid_argument) with k <= max_mult - 1.
struct joint_survival_estimate {
  double joint = 0.0;
  double product_of_exponentials = 0.0;
  long long trials = 0;
  std::uint64_t seed = 0;
};
joint_survival_estimate estimate_joint_survival(const deck_spec& spec,
                                                std::vector<int> times,
                                                long long trials,
                                                std::uint64_t seed,
                                                int threads = 0);

}  // namespace cardguess
