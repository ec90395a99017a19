#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "cardguess/deck.hpp"
#include "test_support.hpp"

using namespace cardguess;

TEST_CASE("spec construction derives the summary fields") {
  const auto a = make_spec({3, 3, 3});
  CHECK(a.n == 3);
  CHECK(a.total_cards == 9);
  CHECK(a.max_mult == 3);
  CHECK(a.is_even);

  const auto b = make_spec({2, 4});
  CHECK(b.n == 2);
  CHECK(b.total_cards == 6);
  CHECK(b.max_mult == 4);
  CHECK(b.avg_mult == doctest::Approx(3.0));
  CHECK_FALSE(b.is_even);

  CHECK_THROWS_AS(make_spec({0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(make_spec({}), std::invalid_argument);
  CHECK_THROWS_AS(make_spec({2, -1}), std::invalid_argument);
}

TEST_CASE("balance statistics") {
  const auto even3 = make_spec({3, 3, 3});
  CHECK(gamma_balance(even3, 2) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

  const auto uneven = make_spec({2, 4});
  CHECK(gamma_balance(uneven, 1) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(gamma_balance(uneven, 2) ==
        doctest::Approx(std::sqrt(3.5)).epsilon(1e-12));

  CHECK(beta_balance(make_spec({2, 2}), 2) == doctest::Approx(0.25).epsilon(1e-12));
  for (int m : {1, 2, 3, 5}) {
    for (int n : {1, 4, 9}) {
      CHECK(beta_balance(even_spec(m, n), 1) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(beta_balance(uneven, 2) == doctest::Approx(3.5 / 9.0).epsilon(1e-12));

  CHECK_THROWS_AS(gamma_balance(uneven, 0), std::domain_error);
  CHECK_THROWS_AS(gamma_balance(uneven, 5), std::domain_error);
  CHECK_THROWS_AS(beta_balance(uneven, 5), std::domain_error);
}

TEST_CASE("gamma/beta consistency across assorted specs") {
  for (const auto& mults : cardguess::testing::all_specs_up_to(9)) {
    const auto spec = make_spec(mults);
    for (int j = 1; j <= spec.max_mult; ++j) {
      const double lhs =
          beta_balance(spec, j) * std::pow(spec.avg_mult, j);
      const double rhs = std::pow(gamma_balance(spec, j), j);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("shuffle is deterministic per (seed, stream)") {
  const auto spec = make_spec({1, 1});
  rng_stream a(123, 7);
  rng_stream b(123, 7);
  const auto da = shuffle(spec, a);
  const auto db = shuffle(spec, b);
  CHECK(da.cards == db.cards);
  CHECK((da.cards == std::vector<int>{0, 1} ||
         da.cards == std::vector<int>{1, 0}));
}

TEST_CASE("single-type deck has a single arrangement") {
  const auto spec = make_spec({3});
  rng_stream rng(5, 0);
  CHECK(shuffle(spec, rng).cards == std::vector<int>{0, 0, 0});
}

TEST_CASE("shuffle conserves the multiset") {
  rng_stream rng(99, 0);
  for (const auto& mults : {std::vector<int>{2, 4}, {1, 2, 3}, {5, 1, 1}}) {
    const auto spec = make_spec(mults);
    for (int rep = 0; rep < 50; ++rep) {
      const auto deck = shuffle(spec, rng);
      std::vector<int> counts(static_cast<std::size_t>(spec.n), 0);
      for (int card : deck.cards) ++counts[static_cast<std::size_t>(card)];
      CHECK(counts == spec.mults);
    }
  }
}

TEST_CASE("shuffle law is uniform over arrangements (chi-square, 2+2 deck)") {
  const auto spec = make_spec({2, 2});
  const int draws = 60'000;
  std::map<std::vector<int>, int> freq;
  rng_stream rng(42, 0);
  for (int i = 0; i < draws; ++i) ++freq[shuffle(spec, rng).cards];
  REQUIRE(freq.size() == 6);

  const double expected = draws / 6.0;
  const double sigma = std::sqrt(draws * (1.0 / 6.0) * (5.0 / 6.0));
  double chi_square = 0.0;
  for (const auto& [cards, count] : freq) {
    CHECK(std::abs(count - expected) <= 3.0 * sigma);
    chi_square += (count - expected) * (count - expected) / expected;
  }
  CHECK(chi_square < 20.5);  // chi-square(5) 0.999 quantile
}

TEST_CASE("shuffle is exchangeable across positions (3 sigma at 1e5 draws)") {
  const auto spec = make_spec({2, 3, 1});
  const int draws = 100'000;
  const int p = 1;
  const int q = 4;
  std::map<std::pair<int, int>, int> at_pq;
  std::map<std::pair<int, int>, int> at_qp;
  rng_stream rng(7, 0);
  for (int i = 0; i < draws; ++i) {
    const auto deck = shuffle(spec, rng);
    ++at_pq[{deck.cards[p], deck.cards[q]}];
    ++at_qp[{deck.cards[q], deck.cards[p]}];
  }
  for (int a = 0; a < spec.n; ++a) {
    for (int b = 0; b < spec.n; ++b) {
      const double fwd = at_pq[{a, b}] / static_cast<double>(draws);
      const double rev = at_qp[{a, b}] / static_cast<double>(draws);
      const double sigma =
          std::sqrt((fwd * (1 - fwd) + rev * (1 - rev)) / draws);
      CHECK(std::abs(fwd - rev) <= 3.0 * std::max(sigma, 1e-4));
    }
  }
}

TEST_CASE("describe") {
  CHECK(describe(even_spec(3, 100)) == "3x100");
  CHECK(describe(make_spec({2, 4})) == "2;4");
  CHECK(describe(make_spec({6, 6, 8, 8})) == "6^2;8^2");
}

TEST_CASE("binomial and falling factorial helpers") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(3, 0) == 1);
  CHECK(binomial(2, 3) == 0);
  CHECK(binomial(20, 10) == 184'756);
  CHECK(falling_factorial(4, 3) == 24);
  CHECK(falling_factorial(3, 3) == 6);
  CHECK(falling_factorial(2, 3) == 0);
}
