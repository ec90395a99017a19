#include "cardguess/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <utility>

namespace cardguess {

namespace {

// Reusable per-thread state. The buffer holds one arrangement of the multiset
// and is restored to its canonical order after every trial, so each trial's
// draw sequence is a pure function of its own random stream. Trials permute
// the buffer lazily (Fisher-Yates prefix), which lets short-circuiting trials
// pay only for the cards they actually look at.
struct trial_workspace {
  const deck_spec& spec;
  std::vector<int> buffer;       // canonical: type 0 block, type 1 block, ...
  std::vector<int> remaining;    // canonical = mults
  std::vector<int> class_count;  // canonical histogram of remaining counts
  std::vector<int> drawn_up;     // canonical all-zero (drawn-so-far counts)
  std::vector<int> drawn_log;
  std::vector<std::pair<int, int>> swap_log;
  std::vector<int> record;  // per-thread scratch for record times
  int min_count = 0;
  int min_type = 0;  // smallest type attaining min_count
  int max_count = 0;
  int max_type = 0;  // smallest type attaining max_count

  explicit trial_workspace(const deck_spec& s) : spec(s) {
    buffer.reserve(static_cast<std::size_t>(s.total_cards));
    for (int type = 0; type < s.n; ++type) {
      buffer.insert(buffer.end(), static_cast<std::size_t>(s.mults[type]),
                    type);
    }
    remaining = s.mults;
    class_count.assign(static_cast<std::size_t>(s.max_mult) + 1, 0);
    for (int m : s.mults) ++class_count[static_cast<std::size_t>(m)];
    drawn_up.assign(static_cast<std::size_t>(s.n), 0);
    record.assign(static_cast<std::size_t>(s.max_mult) + 1, 0);
    min_count = *std::min_element(s.mults.begin(), s.mults.end());
    max_count = s.max_mult;
    min_type = static_cast<int>(std::find(s.mults.begin(), s.mults.end(),
                                          min_count) -
                                s.mults.begin());
    max_type = static_cast<int>(std::find(s.mults.begin(), s.mults.end(),
                                          max_count) -
                                s.mults.begin());
  }

  int draw(std::size_t i, rng_stream& rng) {
    const auto pick = i + rng.next_below(buffer.size() - i);
    if (pick != i) {
      std::swap(buffer[i], buffer[pick]);
      swap_log.emplace_back(static_cast<int>(i), static_cast<int>(pick));
    }
    return buffer[i];
  }

  void restore() {
    for (auto it = drawn_log.rbegin(); it != drawn_log.rend(); ++it) {
      const int c = remaining[static_cast<std::size_t>(*it)];
      --class_count[static_cast<std::size_t>(c)];
      ++class_count[static_cast<std::size_t>(c) + 1];
      ++remaining[static_cast<std::size_t>(*it)];
    }
    drawn_log.clear();
    for (auto it = swap_log.rbegin(); it != swap_log.rend(); ++it) {
      std::swap(buffer[static_cast<std::size_t>(it->first)],
                buffer[static_cast<std::size_t>(it->second)]);
    }
    swap_log.clear();
  }

  void restore_counts_only() {
    for (int type : drawn_log) drawn_up[static_cast<std::size_t>(type)] = 0;
    drawn_log.clear();
    for (auto it = swap_log.rbegin(); it != swap_log.rend(); ++it) {
      std::swap(buffer[static_cast<std::size_t>(it->first)],
                buffer[static_cast<std::size_t>(it->second)]);
    }
    swap_log.clear();
  }
};

// Incremental greedy pick. Counts only decrease, so the min-count class only
// gains members (or the minimum drops), and the max-count class only loses
// members; that pins exactly when the tie-broken pick can change, making each
// step O(1) apart from a rescan per correct best-mode guess.
struct greedy_tracker {
  strategy mode;
  int extreme_count;  // current min (worst) or max (best) remaining count
  int guess;          // smallest type attaining extreme_count

  greedy_tracker(strategy m, const trial_workspace& ws)
      : mode(m),
        extreme_count(m == strategy::worst ? ws.min_count : ws.max_count),
        guess(m == strategy::worst ? ws.min_type : ws.max_type) {}

  // No future guess can be correct once an exhausted type is the minimum.
  bool dead() const { return mode == strategy::worst && extreme_count == 0; }

  bool step(int drawn, trial_workspace& ws) {
    const bool correct = drawn == guess;
    const int c = ws.remaining[static_cast<std::size_t>(drawn)];
    ws.remaining[static_cast<std::size_t>(drawn)] = c - 1;
    --ws.class_count[static_cast<std::size_t>(c)];
    ++ws.class_count[static_cast<std::size_t>(c) - 1];
    if (mode == strategy::worst) {
      if (c - 1 < extreme_count) {
        extreme_count = c - 1;
        guess = drawn;
      } else if (c - 1 == extreme_count && drawn < guess) {
        guess = drawn;
      }
    } else if (correct) {
      if (ws.class_count[static_cast<std::size_t>(extreme_count)] == 0) {
        --extreme_count;
      }
      if (extreme_count > 0) {
        for (int type = 0;; ++type) {
          if (ws.remaining[static_cast<std::size_t>(type)] == extreme_count) {
            guess = type;
            break;
          }
        }
      }
    }
    return correct;
  }
};

// One greedy play-through; equivalent to play(shuffle(...), mode).score with
// the generated sequence read in draw order.
long long score_one_trial(strategy mode, rng_stream& rng, trial_workspace& ws) {
  const auto total = ws.buffer.size();
  long long score = 0;
  greedy_tracker tracker(mode, ws);
  for (std::size_t i = 0; i < total && !tracker.dead(); ++i) {
    const int drawn = ws.draw(i, rng);
    ws.drawn_log.push_back(drawn);
    score += tracker.step(drawn, ws) ? 1 : 0;
  }
  ws.restore();
  return score;
}

// Record times T_1..T_j_max of a fresh shuffle, scanning in generation order
// (the generated sequence plays the role of the bottom-up card sequence).
// Stops as soon as some type has appeared j_max + 1 times.
void record_times_one_trial(int j_max, rng_stream& rng, trial_workspace& ws,
                            std::vector<int>& out) {
  int level = 0;
  const auto total = ws.buffer.size();
  for (std::size_t i = 0; i < total; ++i) {
    const int drawn = ws.draw(i, rng);
    const int reached = ++ws.drawn_up[static_cast<std::size_t>(drawn)];
    if (reached == 1) ws.drawn_log.push_back(drawn);
    if (reached > level) {
      level = reached;
      if (level >= 2) out[static_cast<std::size_t>(level - 1)] =
          static_cast<int>(i);  // first (level)-fold repeat at position i+1
      if (level > j_max) break;
    }
  }
  for (int j = level; j <= j_max; ++j) {
    out[static_cast<std::size_t>(j)] = static_cast<int>(total);
  }
  ws.restore_counts_only();
}

// Top-down record time: materialize the whole arrangement, then scan it from
// the top of the deck.
int record_time_top_down_one_trial(int j, rng_stream& rng,
                                   trial_workspace& ws) {
  const auto total = ws.buffer.size();
  for (std::size_t i = 0; i < total; ++i) ws.draw(i, rng);
  int t = 0;
  for (std::size_t i = total; i-- > 0;) {
    const int drawn = ws.buffer[i];
    const int reached = ++ws.drawn_up[static_cast<std::size_t>(drawn)];
    if (reached == 1) ws.drawn_log.push_back(drawn);
    if (reached > j) break;
    ++t;
  }
  ws.restore_counts_only();
  return t;
}

int resolve_threads(int threads, long long trials) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  return static_cast<int>(
      std::min<long long>(threads, std::max<long long>(trials, 1)));
}

// Runs fn(trial_index, workspace, rng) for every trial, partitioned over
// threads by contiguous index ranges. Results must be accumulated by the
// caller through per-thread state to stay order-independent.
template <typename PerThread, typename Fn>
void parallel_trials(const deck_spec& spec, long long trials,
                     std::uint64_t seed, int threads,
                     std::vector<PerThread>& partials, Fn&& fn) {
  const int workers = resolve_threads(threads, trials);
  const PerThread prototype = partials.front();
  partials.assign(static_cast<std::size_t>(workers), prototype);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const long long chunk = (trials + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long long lo = w * chunk;
    const long long hi = std::min(trials, lo + chunk);
    pool.emplace_back([&, w, lo, hi] {
      trial_workspace ws(spec);
      for (long long trial = lo; trial < hi; ++trial) {
        rng_stream rng(seed, static_cast<std::uint64_t>(trial));
        fn(partials[static_cast<std::size_t>(w)], ws, rng);
      }
    });
  }
  for (auto& worker : pool) worker.join();
}

}  // namespace

long long greedy_score(const deck_spec& spec, std::span<const int> draws,
                       strategy mode) {
  if (static_cast<long long>(draws.size()) != spec.total_cards) {
    throw std::invalid_argument("greedy_score: sequence length must be N");
  }
  std::vector<int> seen(static_cast<std::size_t>(spec.n), 0);
  for (int card : draws) {
    if (card < 0 || card >= spec.n ||
        ++seen[static_cast<std::size_t>(card)] >
            spec.mults[static_cast<std::size_t>(card)]) {
      throw std::invalid_argument(
          "greedy_score: sequence is not an arrangement of the spec");
    }
  }
  trial_workspace ws(spec);
  greedy_tracker tracker(mode, ws);
  long long score = 0;
  for (int drawn : draws) {
    if (tracker.dead()) break;
    score += tracker.step(drawn, ws) ? 1 : 0;
  }
  return score;
}

sim_summary run_score_trials(const deck_spec& spec, strategy mode,
                             long long trials, std::uint64_t seed,
                             int threads) {
  if (trials < 1) throw std::invalid_argument("run_score_trials: trials >= 1");
  struct moments {
    long long sum = 0;
    long long sum_sq = 0;
  };
  std::vector<moments> partials(1);
  parallel_trials(spec, trials, seed, threads, partials,
                  [&](moments& acc, trial_workspace& ws, rng_stream& rng) {
                    const long long s = score_one_trial(mode, rng, ws);
                    acc.sum += s;
                    acc.sum_sq += s * s;
                  });
  long long sum = 0;
  long long sum_sq = 0;
  for (const auto& p : partials) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }

  sim_summary out;
  out.trials = trials;
  out.seed = seed;
  out.spec = spec;
  out.target = mode == strategy::best ? "score/best" : "score/worst";
  out.mean = static_cast<double>(sum) / static_cast<double>(trials);
  if (trials > 1) {
    const __int128 var_num = static_cast<__int128>(sum_sq) * trials -
                             static_cast<__int128>(sum) * sum;
    const long double var =
        static_cast<long double>(var_num) /
        (static_cast<long double>(trials) * static_cast<long double>(trials - 1));
    out.sample_std = std::sqrt(std::max(0.0, static_cast<double>(var)));
  }
  out.std_error = out.sample_std / std::sqrt(static_cast<double>(trials));
  return out;
}

survival_curve estimate_survival(const deck_spec& spec, int j,
                                 std::vector<int> t_grid, long long trials,
                                 std::uint64_t seed, scan_order order,
                                 int threads) {
  if (trials < 1) throw std::invalid_argument("estimate_survival: trials >= 1");
  if (j < 1 || j > spec.max_mult - 1) {
    throw std::domain_error("estimate_survival: j must be in [1, max_mult - 1]");
  }
  std::sort(t_grid.begin(), t_grid.end());
  for (int t : t_grid) {
    if (t < 0 || t > spec.total_cards) {
      throw std::invalid_argument("estimate_survival: grid time outside [0, N]");
    }
  }

  using counts_t = std::vector<long long>;
  std::vector<counts_t> partials(1, counts_t(t_grid.size(), 0));
  if (order == scan_order::bottom_up) {
    parallel_trials(spec, trials, seed, threads, partials,
                    [&](counts_t& acc, trial_workspace& ws, rng_stream& rng) {
                      record_times_one_trial(j, rng, ws, ws.record);
                      const int record_j =
                          ws.record[static_cast<std::size_t>(j)];
                      for (std::size_t g = 0; g < t_grid.size(); ++g) {
                        acc[g] += record_j >= t_grid[g] ? 1 : 0;
                      }
                    });
  } else {
    parallel_trials(spec, trials, seed, threads, partials,
                    [&](counts_t& acc, trial_workspace& ws, rng_stream& rng) {
                      const int record_j =
                          record_time_top_down_one_trial(j, rng, ws);
                      for (std::size_t g = 0; g < t_grid.size(); ++g) {
                        acc[g] += record_j >= t_grid[g] ? 1 : 0;
                      }
                    });
  }
  counts_t totals(t_grid.size(), 0);
  for (const auto& p : partials) {
    for (std::size_t g = 0; g < totals.size(); ++g) totals[g] += p[g];
  }

  survival_curve curve;
  curve.j = j;
  curve.source = curve_source::empirical;
  curve.survival.reserve(t_grid.size());
  for (long long c : totals) {
    curve.survival.push_back(static_cast<double>(c) /
                             static_cast<double>(trials));
  }
  curve.times = std::move(t_grid);
  return curve;
}

joint_survival_estimate estimate_joint_survival(const deck_spec& spec,
                                                std::vector<int> times,
                                                long long trials,
                                                std::uint64_t seed,
                                                int threads) {
  if (trials < 1) {
    throw std::invalid_argument("estimate_joint_survival: trials >= 1");
  }
  if (times.empty() || !std::is_sorted(times.begin(), times.end())) {
    throw std::invalid_argument(
        "estimate_joint_survival: times must be sorted t_1 <= ... <= t_k");
  }
  const int k = static_cast<int>(times.size());
  if (k > spec.max_mult - 1) {
    throw std::domain_error("estimate_joint_survival: k must be <= max_mult - 1");
  }
  for (int t : times) {
    if (t < 0 || t > spec.total_cards) {
      throw std::invalid_argument("estimate_joint_survival: time outside [0, N]");
    }
  }

  std::vector<long long> partials(1, 0);
  parallel_trials(spec, trials, seed, threads, partials,
                  [&](long long& acc, trial_workspace& ws, rng_stream& rng) {
                    record_times_one_trial(k, rng, ws, ws.record);
                    bool all = true;
                    for (int j = 1; j <= k; ++j) {
                      all = all && ws.record[static_cast<std::size_t>(j)] >=
                                       times[static_cast<std::size_t>(j - 1)];
                    }
                    acc += all ? 1 : 0;
                  });
  long long hits = 0;
  for (long long p : partials) hits += p;

  joint_survival_estimate out;
  out.trials = trials;
  out.seed = seed;
  out.joint = static_cast<double>(hits) / static_cast<double>(trials);
  out.product_of_exponentials = 1.0;
  for (int j = 1; j <= k; ++j) {
    out.product_of_exponentials *=
        std::exp(-lambda_stat(spec, j, times[static_cast<std::size_t>(j - 1)]));
  }
  return out;
}

}  // namespace cardguess
