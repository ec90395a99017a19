#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cardguess/birthday.hpp"
#include "cardguess/oracle.hpp"
#include "test_support.hpp"

using namespace cardguess;
using cardguess::testing::deck_of;

TEST_CASE("record_time scans bottom-up by default") {
  const auto spec22 = make_spec({2, 2});
  CHECK(record_time(deck_of(spec22, {0, 1, 1, 0}), 1) == 2);

  const auto spec33 = make_spec({3, 3});
  CHECK(record_time(deck_of(spec33, {0, 1, 0, 1, 1, 0}), 2) == 4);

  const auto single = make_spec({3});
  CHECK(record_time(deck_of(single, {0, 0, 0}), 1) == 1);

  CHECK_THROWS_AS(record_time(deck_of(spec22, {0, 1, 1, 0}), 0),
                  std::domain_error);
  CHECK_THROWS_AS(record_time(deck_of(spec22, {0, 1, 1, 0}), 2),
                  std::domain_error);
}

TEST_CASE("record_time top-down scans from the top of the deck") {
  const auto spec = make_spec({2, 2});
  const auto deck = deck_of(spec, {0, 1, 1, 0});  // top-down reads 0,1,1,0
  CHECK(record_time(deck, 1, scan_order::top_down) == 2);
  const auto deck2 = deck_of(spec, {1, 1, 0, 0});  // top-down reads 0,0,1,1
  CHECK(record_time(deck2, 1, scan_order::top_down) == 1);
  CHECK(record_time(deck2, 1, scan_order::bottom_up) == 1);
}

TEST_CASE("tuple_count matches the tuple definition") {
  const auto spec = make_spec({2, 2});
  CHECK(tuple_count(deck_of(spec, {0, 0, 1, 1}), 1, 4) == 2);
  CHECK(tuple_count(deck_of(spec, {0, 1, 0, 1}), 1, 3) == 1);
  for (int t = 0; t <= 1; ++t) {
    CHECK(tuple_count(deck_of(spec, {0, 1, 0, 1}), 1, t) == 0);
  }
}

TEST_CASE("tuple_count == 0 exactly when record_time >= t") {
  rng_stream rng(3, 0);
  for (const auto& mults : cardguess::testing::all_specs_up_to(7)) {
    const auto spec = make_spec(mults);
    if (spec.max_mult < 2) continue;
    for (int rep = 0; rep < 20; ++rep) {
      const auto deck = shuffle(spec, rng);
      for (int j = 1; j <= spec.max_mult - 1; ++j) {
        const int record = record_time(deck, j);
        for (int t = 0; t <= spec.total_cards; ++t) {
          CHECK((tuple_count(deck, j, t) == 0) == (record >= t));
        }
      }
    }
  }
}

TEST_CASE("lambda statistic") {
  CHECK(lambda_stat(even_spec(2, 100), 1, 20) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lambda_stat(even_spec(2, 100), 1, 0) == 0.0);

  // the fair-odds point of the 2x365 deck sits between 31 and 32 sampled cards
  const auto birthday = even_spec(2, 365);
  CHECK(lambda_stat(birthday, 1, 31) < std::log(2.0));
  CHECK(lambda_stat(birthday, 1, 32) > std::log(2.0));
  CHECK(survival_approx(birthday, 1, 32).value == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("survival approximation value and error scale") {
  const auto spec = even_spec(2, 100);
  const auto approx = survival_approx(spec, 1, 20);
  CHECK(approx.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(approx.error_scale == doctest::Approx(0.2).epsilon(1e-12));

  const auto at_zero = survival_approx(spec, 1, 0);
  CHECK(at_zero.value == 1.0);
  CHECK(at_zero.error_scale == 0.0);

  // against the exact law of the 2+2 deck: error within the t/n scale
  const auto tiny = even_spec(2, 2);
  const double exact = exact_survival(tiny, 1, 2);
  CHECK(exact == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  const auto est = survival_approx(tiny, 1, 2);
  CHECK(est.value == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(std::abs(est.value - exact) <= est.error_scale);
}

TEST_CASE("exact expected tuple count") {
  const auto tiny = even_spec(2, 2);
  CHECK(expected_tuple_count(tiny, 1, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(expected_tuple_count(tiny, 1, 1) == 0.0);
  CHECK(expected_tuple_count(tiny, 1, 0) == 0.0);
  CHECK(expected_tuple_count(tiny, 1, 4) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("empirical tuple count mean matches the exact mean (N <= 12)") {
  for (const auto& mults : cardguess::testing::all_specs_up_to(12)) {
    const auto spec = make_spec(mults);
    if (spec.max_mult < 2 || spec.total_cards < 12) continue;
    const int j = 1;
    const int t = static_cast<int>(spec.total_cards) / 2;
    const long long trials = 100'000;
    long long sum = 0;
    long long sum_sq = 0;
    for (long long trial = 0; trial < trials; ++trial) {
      rng_stream rng(2024, static_cast<std::uint64_t>(trial));
      const auto deck = shuffle(spec, rng);
      const long long w = tuple_count(deck, j, t);
      sum += w;
      sum_sq += w * w;
    }
    const double mean = static_cast<double>(sum) / trials;
    const double var =
        (static_cast<double>(sum_sq) - mean * sum) / (trials - 1);
    const double stderr_mean = std::sqrt(std::max(var, 1e-12) / trials);
    const double exact = expected_tuple_count(spec, j, t);
    CHECK(std::abs(mean - exact) <= 4.0 * stderr_mean);
  }
}

TEST_CASE("Chernoff tail bound") {
  const auto tiny = even_spec(2, 2);
  CHECK(chernoff_tail_bound(tiny, 1, 2, 0.0) == 1.0);
  CHECK(chernoff_tail_bound(tiny, 1, 2, 1.0 / 6.0) ==
        doctest::Approx(std::exp(-1.0 / 24.0)).epsilon(1e-12));
  // valid upper bound at the exact survival of the 2+2 deck
  CHECK(chernoff_tail_bound(tiny, 1, 2, 1.0 / 6.0) >= 2.0 / 3.0);

  CHECK_THROWS_AS(chernoff_tail_bound(tiny, 1, 2, 1.0 / 3.0), std::domain_error);
  CHECK_THROWS_AS(chernoff_tail_bound(tiny, 1, 2, -0.1), std::domain_error);
  CHECK_THROWS_AS(chernoff_tail_bound(tiny, 1, 1, 0.0), std::domain_error);

  SUBCASE("strictly decreasing in x") {
    double last = 2.0;
    const double mu = expected_tuple_count(tiny, 1, 3);
    for (double x = 0.0; x < mu; x += mu / 16.0) {
      const double bound = chernoff_tail_bound(tiny, 1, 3, x);
      CHECK(bound < last + 1e-15);
      if (x > 0.0) CHECK(bound < last);
      last = bound;
    }
  }
}

TEST_CASE("bound dominates exact survival whenever defined (small specs)") {
  for (const auto& mults : cardguess::testing::all_specs_up_to(8)) {
    const auto spec = make_spec(mults);
    if (spec.max_mult < 2) continue;
    for (int j = 1; j <= spec.max_mult - 1; ++j) {
      for (int t = j + 1; t <= spec.total_cards; ++t) {
        const double mu = expected_tuple_count(spec, j, t);
        if (mu <= 0.0) continue;
        const double exact = exact_survival(spec, j, t);
        for (double frac : {0.1, 0.5, 0.9, 0.999}) {
          CHECK(exact <= chernoff_tail_bound(spec, j, t, frac * mu) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("exponential tail with caller-supplied constants") {
  const auto spec = even_spec(2, 100);
  CHECK(exponential_tail_bound(spec, 1, 20, 2.0, 0.5) ==
        doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("curve factories") {
  const auto zero = record_time_zero_curve(4);
  CHECK(zero.at(0) == 1.0);
  for (int t = 1; t <= 4; ++t) CHECK(zero.at(t) == 0.0);
  CHECK_THROWS_AS(zero.at(5), std::invalid_argument);

  const auto approx = approx_survival_curve(even_spec(2, 100), 1, {0, 10, 20});
  CHECK(approx.at(0) == 1.0);
  CHECK(approx.at(20) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(approx.source == curve_source::approx);
}
