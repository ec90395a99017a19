#pragma once

#include <string>
#include <vector>

#include "cardguess/rng.hpp"

namespace cardguess {

// A deck composition: n card types, type i occurring mults[i] times.
// Types are 0-based everywhere in this library.
struct deck_spec {
  std::vector<int> mults;  // per-type multiplicity, all >= 1
  int n = 0;               // number of types
  long long total_cards = 0;
  int max_mult = 0;        // largest multiplicity
  double avg_mult = 0.0;   // total_cards / n
  bool is_even = false;    // all multiplicities equal
};

// Validates and derives the summary fields. Throws std::invalid_argument on an
// empty sequence or a non-positive multiplicity.
deck_spec make_spec(std::vector<int> mults);

// The m*1_n deck: `types` card types, each with multiplicity `mult`.
deck_spec even_spec(int mult, int types);

// Compact human-readable descriptor, e.g. "3x100" or "2;4;4".
std::string describe(const deck_spec& spec);

// Deck-balance statistics: gamma_balance is the j-th root of the average
// binomial coefficient of the multiplicities, beta_balance the same average
// normalized by the j-th power of the mean multiplicity. Require 1 <= j <=
// max_mult (throws std::domain_error otherwise).
double gamma_balance(const deck_spec& spec, int j);
double beta_balance(const deck_spec& spec, int j);

// One arrangement of the multiset. cards[i] is the type of the (i+1)-th card
// counting from the bottom of the deck; the top of the deck is cards.back().
struct shuffled_deck {
  deck_spec spec;
  std::vector<int> cards;
};

// Uniformly random arrangement (exact Fisher-Yates law), deterministic given
// the stream state.
shuffled_deck shuffle(const deck_spec& spec, rng_stream& rng);

// Exact binomial coefficient in integer arithmetic; throws std::overflow_error
// if the value does not fit in 64 bits.
long long binomial(long long n, long long k);

// Falling factorial m(m-1)...(m-k+1) for small integer arguments.
long long falling_factorial(long long m, int k);

}  // namespace cardguess
