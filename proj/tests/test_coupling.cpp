#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "cardguess/birthday.hpp"
#include "cardguess/coupling.hpp"
#include "cardguess/oracle.hpp"
#include "test_support.hpp"

using namespace cardguess;
using cardguess::testing::deck_of;

namespace {

// all k-subsets of a sorted item list, used by the test-side enumerations
void subsets_of(const std::vector<int>& items, int k,
                const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  const int n = static_cast<int>(items.size());
  std::vector<int> pick(static_cast<std::size_t>(k));
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
      idx[static_cast<std::size_t>(l)] =
          idx[static_cast<std::size_t>(l - 1)] + 1;
    }
  }
}

int count_differences(const std::vector<int>& a, const std::vector<int>& b) {
  int diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] != b[i] ? 1 : 0;
  return diff;
}

}  // namespace

TEST_CASE("chosen-type law is proportional to falling factorials") {
  const auto spec = make_spec({4, 3, 2});
  const auto law = tuple_type_law(spec, 3);
  CHECK(law[0] == doctest::Approx(24.0 / 30.0).epsilon(1e-14));
  CHECK(law[1] == doctest::Approx(6.0 / 30.0).epsilon(1e-14));
  CHECK(law[2] == 0.0);

  CHECK_THROWS_AS(tuple_type_law(even_spec(1, 4), 2), std::domain_error);
}

TEST_CASE("worked rearrangement: 4,3,2 deck, s = first three positions") {
  const std::vector<int> cards{2, 0, 1, 1, 0, 2, 0, 1, 0};
  const std::vector<int> s{0, 1, 2};
  const std::vector<int> star{1, 4, 6};  // positions of the chosen type
  const auto coupled = apply_coupling(cards, s, 0, star);
  CHECK(coupled == std::vector<int>{0, 0, 0, 1, 2, 2, 1, 1, 0});
}

TEST_CASE("fixed point: s already covers exactly the chosen type") {
  const auto spec = make_spec({2, 1});
  const auto deck = deck_of(spec, {0, 0, 1});
  rng_stream rng(1, 0);
  const auto record = couple_deck(deck, {0, 1}, rng);
  CHECK(record.chosen_type == 0);
  CHECK(record.star_positions == std::vector<int>{0, 1});
  CHECK(record.coupled.cards == deck.cards);
}

TEST_CASE("sampled couplings obey the structural invariants") {
  rng_stream rng(17, 0);
  for (const auto& mults :
       {std::vector<int>{4, 3, 2}, {2, 2, 2}, {3, 1, 1, 3}, {5, 2}}) {
    const auto spec = make_spec(mults);
    for (int rep = 0; rep < 400; ++rep) {
      const auto deck = shuffle(spec, rng);
      const int size = 2 + static_cast<int>(rng.next_below(
                               static_cast<std::uint64_t>(spec.max_mult - 1)));
      std::vector<int> positions;
      while (static_cast<int>(positions.size()) < size) {
        const int p = static_cast<int>(
            rng.next_below(static_cast<std::uint64_t>(spec.total_cards)));
        if (std::find(positions.begin(), positions.end(), p) ==
            positions.end()) {
          positions.push_back(p);
        }
      }
      const auto record = couple_deck(deck, positions, rng);

      // multiset conservation
      auto original_sorted = deck.cards;
      auto coupled_sorted = record.coupled.cards;
      std::sort(original_sorted.begin(), original_sorted.end());
      std::sort(coupled_sorted.begin(), coupled_sorted.end());
      CHECK(original_sorted == coupled_sorted);

      // all of s holds the chosen type
      for (int p : record.positions) {
        CHECK(record.coupled.cards[static_cast<std::size_t>(p)] ==
              record.chosen_type);
      }
      // s* marks type-I positions of the original deck
      for (int p : record.star_positions) {
        CHECK(deck.cards[static_cast<std::size_t>(p)] == record.chosen_type);
      }
      // at most 2|s| positions change
      CHECK(count_differences(deck.cards, record.coupled.cards) <= 2 * size);
    }
  }
}

TEST_CASE("sampler frequencies match the exact chosen-type law") {
  const auto spec = make_spec({4, 3, 2});
  const auto deck = deck_of(spec, {2, 0, 1, 1, 0, 2, 0, 1, 0});
  const int samples = 30'000;
  std::map<int, int> type_freq;
  std::map<std::vector<int>, int> star_freq;
  rng_stream rng(5, 0);
  for (int i = 0; i < samples; ++i) {
    const auto record = couple_deck(deck, {0, 1, 2}, rng);
    ++type_freq[record.chosen_type];
    if (record.chosen_type == 0) ++star_freq[record.star_positions];
  }
  CHECK(type_freq[2] == 0);
  const double p0 = type_freq[0] / static_cast<double>(samples);
  const double sigma = std::sqrt(0.8 * 0.2 / samples);
  CHECK(std::abs(p0 - 0.8) <= 4.0 * sigma);

  // s* uniform over the four 3-subsets of the type-0 positions {1,4,6,8}
  REQUIRE(star_freq.size() == 4);
  for (const auto& [star, count] : star_freq) {
    const double freq = count / static_cast<double>(type_freq[0]);
    CHECK(std::abs(freq - 0.25) <= 4.0 * std::sqrt(0.25 * 0.75 / type_freq[0]));
  }
}

TEST_CASE("size-bias pair: forced tuple and boundedness") {
  const auto tiny = even_spec(2, 2);
  rng_stream rng(9, 0);
  for (int rep = 0; rep < 2'000; ++rep) {
    const auto deck = shuffle(tiny, rng);
    const auto sample = size_bias_pair(deck, 1, 2, rng);
    CHECK(sample.w_star >= 1);  // the coupled deck starts with an equal pair
    CHECK(sample.w_star <= sample.w + binomial(2, 2));
  }

  rng_stream wide_rng(10, 0);
  for (const auto& mults :
       {std::vector<int>{3, 3, 3}, {4, 4}, {2, 2, 2, 2}, {4, 2, 3}}) {
    const auto spec = make_spec(mults);
    for (int rep = 0; rep < 2'000; ++rep) {
      const auto deck = shuffle(spec, wide_rng);
      for (int j = 1; j <= spec.max_mult - 1; ++j) {
        const int t = j + 1 +
                      static_cast<int>(wide_rng.next_below(
                          static_cast<std::uint64_t>(spec.total_cards - j)));
        const auto sample = size_bias_pair(deck, j, t, wide_rng);
        CHECK(sample.w_star <= sample.w + binomial(spec.max_mult, j + 1));
      }
    }
  }
}

TEST_CASE("enumerated coupled tuple count has the exact size-bias law") {
  // law of W* from exhaustive enumeration over (arrangement, s', I, s*),
  // against k P(W = k) / E[W] from the exact tuple-count law
  for (int n : {3, 4}) {
    const auto spec = even_spec(2, n);
    const int j = 1;
    const int t = n;  // pairs among the first n positions
    const int k = j + 1;

    std::vector<int> window(static_cast<std::size_t>(t));
    std::iota(window.begin(), window.end(), 0);

    std::map<long long, rational> star_law;
    long long arrangements = 0;
    for_each_arrangement(spec, [&](const std::vector<int>& cards) {
      ++arrangements;
      subsets_of(window, k, [&](const std::vector<int>& prime) {
        // chosen-type law: multiplicities are all 2, so uniform over types
        for (int type = 0; type < spec.n; ++type) {
          std::vector<int> where;
          for (int p = 0; p < static_cast<int>(cards.size()); ++p) {
            if (cards[static_cast<std::size_t>(p)] == type) where.push_back(p);
          }
          // every type has exactly one k-subset of its positions here
          const auto coupled_cards = apply_coupling(cards, prime, type, where);
          shuffled_deck coupled;
          coupled.spec = spec;
          coupled.cards = coupled_cards;
          const long long w_star = tuple_count(coupled, j, t);
          const rational weight =
              rational(1, arrangement_count(spec)) *
              rational(1, binomial(t, k)) * rational(1, spec.n);
          auto [it, inserted] = star_law.try_emplace(w_star, weight);
          if (!inserted) it->second = it->second + weight;
        }
      });
    });
    REQUIRE(arrangements == arrangement_count(spec));

    const auto base_law = exact_tuple_count_pmf(spec, j, t);
    const double mean = base_law.mean();
    for (const auto& [value, prob] : star_law) {
      const double expected =
          static_cast<double>(value) * base_law.mass_at(value) / mean;
      CHECK(prob.to_double() == doctest::Approx(expected).epsilon(1e-12));
    }
    // and the size-bias law covers exactly the positive-mass points
    for (std::size_t i = 0; i < base_law.support.size(); ++i) {
      if (base_law.support[i] > 0 && base_law.probs[i] > 0.0) {
        CHECK(star_law.count(base_law.support[i]) == 1);
      }
    }
  }
}

TEST_CASE("couple_deck input validation") {
  const auto spec = even_spec(2, 2);
  const auto deck = deck_of(spec, {0, 1, 0, 1});
  rng_stream rng(2, 0);
  CHECK_THROWS_AS(couple_deck(deck, {0, 1, 2}, rng), std::domain_error);
  CHECK_THROWS_AS(couple_deck(deck, {0, 0}, rng), std::invalid_argument);
  CHECK_THROWS_AS(couple_deck(deck, {0, 9}, rng), std::invalid_argument);
  CHECK_THROWS_AS(size_bias_pair(deck, 1, 1, rng), std::domain_error);
}
