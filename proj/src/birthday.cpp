#include "cardguess/birthday.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cardguess {

namespace {

void require_record_index(const deck_spec& spec, int j) {
  if (j < 1 || j > spec.max_mult - 1) {
    throw std::domain_error("record index j must be in [1, max_mult - 1]");
  }
}

// visits cards in scan order
template <typename Fn>
void scan_cards(const shuffled_deck& deck, scan_order order, Fn&& fn) {
  if (order == scan_order::bottom_up) {
    for (int card : deck.cards) {
      if (!fn(card)) return;
    }
  } else {
    for (auto it = deck.cards.rbegin(); it != deck.cards.rend(); ++it) {
      if (!fn(*it)) return;
    }
  }
}

}  // namespace

int record_time(const shuffled_deck& deck, int j, scan_order order) {
  require_record_index(deck.spec, j);
  std::vector<int> counts(static_cast<std::size_t>(deck.spec.n), 0);
  int t = 0;
  scan_cards(deck, order, [&](int card) {
    if (++counts[card] > j) return false;
    ++t;
    return true;
  });
  return t;
}

long long tuple_count(const shuffled_deck& deck, int j, int t,
                      scan_order order) {
  require_record_index(deck.spec, j);
  if (t < 0 || t > deck.spec.total_cards) {
    throw std::domain_error("tuple_count: t must be in [0, N]");
  }
  std::vector<int> counts(static_cast<std::size_t>(deck.spec.n), 0);
  int seen = 0;
  scan_cards(deck, order, [&](int card) {
    if (seen == t) return false;
    ++counts[card];
    ++seen;
    return true;
  });
  long long total = 0;
  for (int c : counts) total += binomial(c, j + 1);
  return total;
}

double lambda_stat(const deck_spec& spec, int j, long long t) {
  require_record_index(spec, j);
  if (t < 0) throw std::domain_error("lambda_stat: t must be >= 0");
  return std::pow(static_cast<double>(t), j + 1) * beta_balance(spec, j + 1) /
         std::pow(static_cast<double>(spec.n), j);
}

survival_approximation survival_approx(const deck_spec& spec, int j,
                                       long long t) {
  return {std::exp(-lambda_stat(spec, j, t)),
          static_cast<double>(t) / static_cast<double>(spec.n)};
}

double expected_tuple_count(const deck_spec& spec, int j, long long t) {
  require_record_index(spec, j);
  if (t < 0 || t > spec.total_cards) {
    throw std::domain_error("expected_tuple_count: t must be in [0, N]");
  }
  const int k = j + 1;
  double tuple_sets = 1.0;  // C(t, j+1)
  for (int i = 0; i < k; ++i) {
    tuple_sets *= static_cast<double>(t - i) / static_cast<double>(i + 1);
  }
  if (t < k) return 0.0;
  double num = 0.0;
  for (int m : spec.mults) {
    num += static_cast<double>(falling_factorial(m, k));
  }
  double den = 1.0;
  for (int i = 0; i < k; ++i) {
    den *= static_cast<double>(spec.total_cards - i);
  }
  return tuple_sets * num / den;
}

double chernoff_tail_bound(const deck_spec& spec, int j, long long t,
                           double x) {
  const double mu = expected_tuple_count(spec, j, t);
  if (mu <= 0.0) {
    throw std::domain_error("chernoff_tail_bound: E[W] must be positive");
  }
  if (x < 0.0 || x >= mu) {
    throw std::domain_error("chernoff_tail_bound: need 0 <= x < E[W]");
  }
  const double c = static_cast<double>(binomial(spec.max_mult, j + 1));
  return std::exp(-x * x / (2.0 * c * mu));
}

double exponential_tail_bound(const deck_spec& spec, int j, long long t,
                              double big_c, double c_prime) {
  return big_c * std::exp(-c_prime * lambda_stat(spec, j, t));
}

double survival_curve::at(int t) const {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end() || *it != t) {
    throw std::invalid_argument("survival curve has no value at t = " +
                                std::to_string(t));
  }
  return survival[static_cast<std::size_t>(it - times.begin())];
}

survival_curve record_time_zero_curve(long long total_cards) {
  survival_curve curve;
  curve.j = 0;
  curve.source = curve_source::exact;
  curve.times.reserve(static_cast<std::size_t>(total_cards) + 1);
  curve.survival.reserve(static_cast<std::size_t>(total_cards) + 1);
  for (long long t = 0; t <= total_cards; ++t) {
    curve.times.push_back(static_cast<int>(t));
    curve.survival.push_back(t == 0 ? 1.0 : 0.0);
  }
  return curve;
}

survival_curve approx_survival_curve(const deck_spec& spec, int j,
                                     std::vector<int> times) {
  survival_curve curve;
  curve.j = j;
  curve.source = curve_source::approx;
  curve.survival.reserve(times.size());
  for (int t : times) {
    curve.survival.push_back(survival_approx(spec, j, t).value);
  }
  curve.times = std::move(times);
  return curve;
}

}  // namespace cardguess
