#pragma once

#include <span>
#include <vector>

#include "cardguess/deck.hpp"

namespace cardguess {

enum class strategy { best, worst };

// Result of one play-through: per-guess correctness in chronological order
// (first guess first) and the total number of correct guesses.
struct game_trace {
  strategy mode;
  std::vector<bool> correct;
  long long score = 0;
};

// Greedy guess against the remaining multiset, indexed by type.
// best: a type of maximal remaining count. worst: a type of minimal remaining
// count over all types, exhausted (zero-count) types included. Ties break to
// the smallest type index. Throws std::logic_error if every count is zero.
int greedy_guess(std::span<const int> remaining_counts, strategy mode);

// Plays the complete-feedback game through the deck, drawing from the top
// (cards.back() is guessed first) and guessing greedily against the true
// remaining counts.
game_trace play(const shuffled_deck& deck, strategy mode);

}  // namespace cardguess
