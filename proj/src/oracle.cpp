#include "cardguess/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cardguess/coupling.hpp"

namespace cardguess {

namespace {

long long checked_narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<long long>(v);
}

rational make_rational(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    const __int128 r = a % b;
    a = b;
    b = r;
  }
  if (a == 0) a = 1;
  rational out;
  out.num = checked_narrow(num / a);
  out.den = checked_narrow(den / a);
  return out;
}

}  // namespace

rational::rational(long long n, long long d) {
  *this = make_rational(n, d);
}

rational rational::operator+(const rational& o) const {
  return make_rational(static_cast<__int128>(num) * o.den +
                           static_cast<__int128>(o.num) * den,
                       static_cast<__int128>(den) * o.den);
}

rational rational::operator-(const rational& o) const {
  return make_rational(static_cast<__int128>(num) * o.den -
                           static_cast<__int128>(o.num) * den,
                       static_cast<__int128>(den) * o.den);
}

rational rational::operator*(const rational& o) const {
  return make_rational(static_cast<__int128>(num) * o.num,
                       static_cast<__int128>(den) * o.den);
}

rational rational::operator/(const rational& o) const {
  if (o.num == 0) throw std::domain_error("rational division by zero");
  return make_rational(static_cast<__int128>(num) * o.den,
                       static_cast<__int128>(den) * o.num);
}

double pmf::mean() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    acc += static_cast<double>(support[i]) * probs[i];
  }
  return acc;
}

double pmf::mass_at(long long k) const {
  const auto it = std::lower_bound(support.begin(), support.end(), k);
  if (it == support.end() || *it != k) return 0.0;
  return probs[static_cast<std::size_t>(it - support.begin())];
}

double tv_distance(const pmf& p, const pmf& q) {
  double sum = 0.0;
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < p.support.size() || b < q.support.size()) {
    if (b == q.support.size() ||
        (a < p.support.size() && p.support[a] < q.support[b])) {
      sum += std::abs(p.probs[a]);
      ++a;
    } else if (a == p.support.size() || q.support[b] < p.support[a]) {
      sum += std::abs(q.probs[b]);
      ++b;
    } else {
      sum += std::abs(p.probs[a] - q.probs[b]);
      ++a;
      ++b;
    }
  }
  return 0.5 * sum;
}

pmf poisson_pmf(double lambda, int k_max) {
  if (lambda < 0.0) throw std::domain_error("poisson_pmf: lambda must be >= 0");
  if (k_max < 0) throw std::domain_error("poisson_pmf: k_max must be >= 0");
  pmf out;
  out.support.reserve(static_cast<std::size_t>(k_max) + 2);
  out.probs.reserve(static_cast<std::size_t>(k_max) + 2);
  double mass = std::exp(-lambda);
  double total = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    out.support.push_back(k);
    out.probs.push_back(mass);
    total += mass;
    mass *= lambda / static_cast<double>(k + 1);
  }
  out.support.push_back(k_max + 1);  // sentinel bucket holding the tail
  out.probs.push_back(std::max(0.0, 1.0 - total));
  return out;
}

// ---------------------------------------------------------------------------
// exact greedy score by recursion over remaining-count states

namespace {

struct score_dp {
  strategy mode;
  std::map<std::vector<int>, double> memo;

  double value(std::vector<int> counts) {
    std::sort(counts.begin(), counts.end(), std::greater<>());
    long long remaining = 0;
    for (int c : counts) remaining += c;
    if (remaining == 0) return 0.0;
    const auto found = memo.find(counts);
    if (found != memo.end()) return found->second;

    int guess_count = 0;
    if (mode == strategy::best) {
      guess_count = counts.front();
    } else {
      guess_count = counts.back();  // zeros included
    }
    double expect = static_cast<double>(guess_count) /
                    static_cast<double>(remaining);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] == 0) break;
      if (i > 0 && counts[i] == counts[i - 1]) continue;
      // all types sharing this count transition to the same child state
      std::size_t same = 1;
      while (i + same < counts.size() && counts[i + same] == counts[i]) ++same;
      auto child = counts;
      child[i] -= 1;
      expect += static_cast<double>(same) * static_cast<double>(counts[i]) /
                static_cast<double>(remaining) * value(std::move(child));
    }
    memo.emplace(std::move(counts), expect);
    return expect;
  }
};

void check_state_capacity(const deck_spec& spec) {
  double states = 1.0;
  for (int m : spec.mults) {
    states *= static_cast<double>(m) + 1.0;
    if (states > 1e7) {
      throw std::length_error("exact score: state space exceeds 1e7");
    }
  }
}

}  // namespace

double exact_expected_score(const deck_spec& spec, strategy mode) {
  check_state_capacity(spec);
  score_dp dp{mode, {}};
  return dp.value(spec.mults);
}

// ---------------------------------------------------------------------------
// exact survival and tuple-count law via per-type convolution with
// multivariate hypergeometric weights

namespace {

long double log_binomial(long long n, long long k) {
  return std::lgammal(static_cast<long double>(n) + 1.0L) -
         std::lgammal(static_cast<long double>(k) + 1.0L) -
         std::lgammal(static_cast<long double>(n - k) + 1.0L);
}

void check_convolution_capacity(const deck_spec& spec, int t) {
  // the unnormalized way-counts must stay below the long double range
  if (log_binomial(spec.total_cards, t) > 10000.0L) {
    throw std::length_error("exact convolution: counts exceed long double range");
  }
}

}  // namespace

double exact_survival(const deck_spec& spec, int j, int t) {
  if (j < 1 || j > spec.max_mult - 1) {
    throw std::domain_error("exact_survival: j must be in [1, max_mult - 1]");
  }
  if (t < 0 || t > spec.total_cards) {
    throw std::domain_error("exact_survival: t must be in [0, N]");
  }
  if (t <= j) return 1.0;
  check_convolution_capacity(spec, t);

  // ways[s] = sum over per-type draw counts d_i <= j with sum s of
  // prod C(m_i, d_i)
  std::vector<long double> ways(static_cast<std::size_t>(t) + 1, 0.0L);
  std::vector<long double> next(ways.size());
  ways[0] = 1.0L;
  long double scale_log = 0.0L;
  for (int m : spec.mults) {
    std::fill(next.begin(), next.end(), 0.0L);
    const int cap = std::min(m, j);
    for (int s = 0; s <= t; ++s) {
      const long double w = ways[static_cast<std::size_t>(s)];
      if (w == 0.0L) continue;
      long double choose = 1.0L;
      for (int d = 0; d <= cap && s + d <= t; ++d) {
        next[static_cast<std::size_t>(s + d)] += w * choose;
        choose = choose * static_cast<long double>(m - d) /
                 static_cast<long double>(d + 1);
      }
    }
    std::swap(ways, next);
    // keep magnitudes in range for very large decks
    const long double peak = *std::max_element(ways.begin(), ways.end());
    if (peak > 1e3000L) {
      for (auto& w : ways) w /= 1e3000L;
      scale_log += std::log(1e3000L);
    }
  }
  const long double log_ways =
      ways[static_cast<std::size_t>(t)] > 0.0L
          ? std::log(ways[static_cast<std::size_t>(t)]) + scale_log
          : -INFINITY;
  return static_cast<double>(
      std::exp(log_ways - log_binomial(spec.total_cards, t)));
}

pmf exact_tuple_count_pmf(const deck_spec& spec, int j, int t) {
  if (j < 1 || j > spec.max_mult - 1) {
    throw std::domain_error("exact_tuple_count_pmf: j must be in [1, max_mult - 1]");
  }
  if (t < 0 || t > spec.total_cards) {
    throw std::domain_error("exact_tuple_count_pmf: t must be in [0, N]");
  }
  check_convolution_capacity(spec, t);
  const int k = j + 1;
  long long w_cap = 0;
  for (int m : spec.mults) w_cap += binomial(std::min<long long>(m, t), k);
  const auto w_dim = static_cast<std::size_t>(w_cap) + 1;
  const auto t_dim = static_cast<std::size_t>(t) + 1;
  if (w_dim * t_dim > 200'000'000) {
    throw std::length_error("exact_tuple_count_pmf: state space too large");
  }

  // ways[s][w]: s cards drawn, accumulated tuple count w
  std::vector<std::vector<long double>> ways(
      t_dim, std::vector<long double>(w_dim, 0.0L));
  std::vector<std::vector<long double>> next(ways);
  ways[0][0] = 1.0L;
  for (int m : spec.mults) {
    for (auto& row : next) std::fill(row.begin(), row.end(), 0.0L);
    const int cap = std::min<long long>(m, t);
    std::vector<long long> tuples(static_cast<std::size_t>(cap) + 1);
    for (int d = 0; d <= cap; ++d) tuples[static_cast<std::size_t>(d)] = binomial(d, k);
    for (int s = 0; s <= t; ++s) {
      for (std::size_t w = 0; w < w_dim; ++w) {
        const long double base = ways[static_cast<std::size_t>(s)][w];
        if (base == 0.0L) continue;
        long double choose = 1.0L;
        for (int d = 0; d <= cap && s + d <= t; ++d) {
          next[static_cast<std::size_t>(s + d)]
              [w + static_cast<std::size_t>(tuples[static_cast<std::size_t>(d)])] +=
              base * choose;
          choose = choose * static_cast<long double>(m - d) /
                   static_cast<long double>(d + 1);
        }
      }
    }
    std::swap(ways, next);
  }

  const long double total = std::exp(log_binomial(spec.total_cards, t));
  pmf out;
  for (std::size_t w = 0; w < w_dim; ++w) {
    const long double mass = ways[static_cast<std::size_t>(t)][w];
    if (mass > 0.0L) {
      out.support.push_back(static_cast<long long>(w));
      out.probs.push_back(static_cast<double>(mass / total));
    }
  }
  if (out.support.empty()) {
    out.support.push_back(0);
    out.probs.push_back(1.0);
  }
  return out;
}

survival_curve exact_survival_curve(const deck_spec& spec, int j) {
  survival_curve curve;
  curve.j = j;
  curve.source = curve_source::exact;
  for (int t = 0; t <= spec.total_cards; ++t) {
    curve.times.push_back(t);
    curve.survival.push_back(exact_survival(spec, j, t));
  }
  return curve;
}

// ---------------------------------------------------------------------------
// multiset arrangements and the exact coupling laws

void for_each_arrangement(
    const deck_spec& spec,
    const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cards;
  cards.reserve(static_cast<std::size_t>(spec.total_cards));
  for (int type = 0; type < spec.n; ++type) {
    cards.insert(cards.end(), static_cast<std::size_t>(spec.mults[type]), type);
  }
  do {
    fn(cards);
  } while (std::next_permutation(cards.begin(), cards.end()));
}

long long arrangement_count(const deck_spec& spec) {
  unsigned __int128 acc = 1;
  long long placed = 0;
  for (int m : spec.mults) {
    for (int i = 1; i <= m; ++i) {
      ++placed;
      acc = acc * static_cast<unsigned __int128>(placed);
      acc /= static_cast<unsigned __int128>(i);
    }
  }
  if (acc > static_cast<unsigned __int128>(INT64_MAX)) {
    throw std::overflow_error("arrangement count exceeds 64 bits");
  }
  return static_cast<long long>(acc);
}

namespace {

// enumerate all k-subsets of items, calling fn with each sorted subset
void for_each_subset(const std::vector<int>& items, int k,
                     const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> pick(static_cast<std::size_t>(k));
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  const int n = static_cast<int>(items.size());
  while (true) {
    for (int i = 0; i < k; ++i) {
      pick[static_cast<std::size_t>(i)] =
          items[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    }
    fn(pick);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int l = i + 1; l < k; ++l) {
      idx[static_cast<std::size_t>(l)] = idx[static_cast<std::size_t>(l - 1)] + 1;
    }
  }
}

}  // namespace

coupling_laws exact_coupling_laws(const deck_spec& spec,
                                  const std::vector<int>& positions) {
  if (spec.total_cards > 8) {
    throw std::length_error("exact_coupling_laws: N <= 8 required");
  }
  std::vector<int> s = positions;
  std::sort(s.begin(), s.end());
  const int k = static_cast<int>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= spec.total_cards || (i > 0 && s[i] == s[i - 1])) {
      throw std::invalid_argument("exact_coupling_laws: bad position set");
    }
  }

  long long type_weight_total = 0;  // sum of falling factorials
  std::vector<long long> type_weight(static_cast<std::size_t>(spec.n));
  for (int i = 0; i < spec.n; ++i) {
    type_weight[static_cast<std::size_t>(i)] =
        falling_factorial(spec.mults[static_cast<std::size_t>(i)], k);
    type_weight_total += type_weight[static_cast<std::size_t>(i)];
  }
  if (type_weight_total == 0) {
    throw std::domain_error(
        "exact_coupling_laws: no type has multiplicity >= |s|");
  }

  const long long arrangements = arrangement_count(spec);
  const rational arrangement_prob(1, arrangements);

  coupling_laws laws;
  long long conditional_matches = 0;
  for_each_arrangement(spec, [&](const std::vector<int>& cards) {
    // conditional law: uniform over arrangements that agree on s
    bool all_equal = true;
    for (int p : s) {
      all_equal = all_equal &&
                  cards[static_cast<std::size_t>(p)] ==
                      cards[static_cast<std::size_t>(s.front())];
    }
    if (all_equal) ++conditional_matches;

    // coupled law: average the construction over I and s*
    for (int type = 0; type < spec.n; ++type) {
      const long long weight = type_weight[static_cast<std::size_t>(type)];
      if (weight == 0) continue;
      std::vector<int> where;
      for (int p = 0; p < static_cast<int>(cards.size()); ++p) {
        if (cards[static_cast<std::size_t>(p)] == type) where.push_back(p);
      }
      const long long subsets =
          binomial(static_cast<long long>(where.size()), k);
      const rational branch_prob =
          arrangement_prob * rational(weight, type_weight_total) *
          rational(1, subsets);
      for_each_subset(where, k, [&](const std::vector<int>& star) {
        auto coupled = apply_coupling(cards, s, type, star);
        auto [it, inserted] =
            laws.coupled.try_emplace(std::move(coupled), branch_prob);
        if (!inserted) it->second = it->second + branch_prob;
      });
    }
  });

  const rational conditional_prob(1, conditional_matches);
  for_each_arrangement(spec, [&](const std::vector<int>& cards) {
    bool all_equal = true;
    for (int p : s) {
      all_equal = all_equal &&
                  cards[static_cast<std::size_t>(p)] ==
                      cards[static_cast<std::size_t>(s.front())];
    }
    if (all_equal) laws.conditional.emplace(cards, conditional_prob);
  });
  return laws;
}

rational tv_distance(const coupling_laws& laws) {
  rational sum(0, 1);
  auto a = laws.coupled.begin();
  auto b = laws.conditional.begin();
  while (a != laws.coupled.end() || b != laws.conditional.end()) {
    if (b == laws.conditional.end() ||
        (a != laws.coupled.end() && a->first < b->first)) {
      sum = sum + a->second.abs();
      ++a;
    } else if (a == laws.coupled.end() || b->first < a->first) {
      sum = sum + b->second.abs();
      ++b;
    } else {
      sum = sum + (a->second - b->second).abs();
      ++a;
      ++b;
    }
  }
  return sum * rational(1, 2);
}

}  // namespace cardguess
