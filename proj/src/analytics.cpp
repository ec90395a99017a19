#include "cardguess/analytics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cardguess {

double harmonic(long long k) {
  if (k < 0) throw std::domain_error("harmonic: k must be >= 0");
  // Neumaier-compensated summation, smallest terms first
  double sum = 0.0;
  double comp = 0.0;
  for (long long i = k; i >= 1; --i) {
    const double term = 1.0 / static_cast<double>(i);
    const double next = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - next) + term;
    } else {
      comp += (term - next) + sum;
    }
    sum = next;
  }
  return sum + comp;
}

double gamma_function(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_function: x must be > 0");
  return std::tgamma(x);
}

namespace {

// one curve per j in 0..count-1, each covering [t_lo, t_hi]
std::vector<std::vector<double>> index_curves(
    const std::vector<survival_curve>& curves, int count, int t_lo, int t_hi) {
  std::vector<std::vector<double>> by_j(static_cast<std::size_t>(count));
  for (const auto& curve : curves) {
    if (curve.j < 0 || curve.j >= count) continue;
    auto& slot = by_j[static_cast<std::size_t>(curve.j)];
    if (!slot.empty()) {
      throw std::invalid_argument("duplicate survival curve for one j");
    }
    slot.resize(static_cast<std::size_t>(t_hi - t_lo) + 1);
    for (int t = t_lo; t <= t_hi; ++t) {
      slot[static_cast<std::size_t>(t - t_lo)] = curve.at(t);
    }
  }
  for (int j = 0; j < count; ++j) {
    if (by_j[static_cast<std::size_t>(j)].empty()) {
      throw std::invalid_argument("missing survival curve for j = " +
                                  std::to_string(j));
    }
  }
  return by_j;
}

}  // namespace

approx_report approx_best(const deck_spec& spec) {
  approx_report report;
  report.error_order = "ln(n)*(ln(n)/n)^(1/m_star)";
  report.terms.push_back({0, harmonic(spec.max_mult) * harmonic(spec.n)});
  for (int j = 1; j <= spec.max_mult; ++j) {
    report.terms.push_back({j, std::log(gamma_balance(spec, j))});
  }
  for (const auto& term : report.terms) report.value += term.value;
  return report;
}

approx_report approx_worst(const deck_spec& spec, bool all_terms) {
  if (!spec.is_even) {
    throw std::domain_error(
        "approx_worst: only even decks are supported (the top-down record "
        "times no longer control the game on uneven decks)");
  }
  const int m = spec.max_mult;
  approx_report report;
  report.error_order = "n^(-2/m)*log^2(n)";
  const int first = all_terms ? 1 : m / 2 + 1;
  for (int j = first; j <= m; ++j) {
    const double term =
        gamma_function((j + 1.0) / j) /
        (gamma_balance(spec, j) * std::pow(static_cast<double>(spec.n), 1.0 / j));
    report.terms.push_back({j, term});
  }
  for (const auto& term : report.terms) report.value += term.value;
  return report;
}

double best_from_survival(const deck_spec& spec,
                          const std::vector<survival_curve>& curves) {
  const int big_n = static_cast<int>(spec.total_cards);
  const auto by_j = index_curves(curves, spec.max_mult, 1, big_n);
  double total = 0.0;
  for (const auto& curve : by_j) {
    for (int t = 1; t <= big_n; ++t) {
      total += (1.0 - curve[static_cast<std::size_t>(t - 1)]) /
               static_cast<double>(t);
    }
  }
  return total;
}

double worst_from_survival(const deck_spec& spec,
                           const std::vector<survival_curve>& curves) {
  if (!spec.is_even) {
    throw std::domain_error("worst_from_survival: only even decks supported");
  }
  const int big_n = static_cast<int>(spec.total_cards);
  const auto by_j = index_curves(curves, spec.max_mult, 0, big_n - 1);
  double total = 0.0;
  for (const auto& curve : by_j) {
    for (int t = 0; t < big_n; ++t) {
      total += curve[static_cast<std::size_t>(t)] / static_cast<double>(big_n - t);
    }
  }
  return total;
}

}  // namespace cardguess
