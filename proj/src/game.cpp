#include "cardguess/game.hpp"

#include <stdexcept>

namespace cardguess {

int greedy_guess(std::span<const int> remaining_counts, strategy mode) {
  const int n = static_cast<int>(remaining_counts.size());
  int pick = -1;
  if (mode == strategy::best) {
    for (int i = 0; i < n; ++i) {
      if (remaining_counts[i] > 0 &&
          (pick < 0 || remaining_counts[i] > remaining_counts[pick])) {
        pick = i;
      }
    }
    if (pick < 0) throw std::logic_error("greedy_guess: no cards remain");
  } else {
    // the worst guesser may guess exhausted types; that is what drives its
    // success probability to zero once a type runs out
    bool any = false;
    for (int i = 0; i < n; ++i) {
      any = any || remaining_counts[i] > 0;
      if (pick < 0 || remaining_counts[i] < remaining_counts[pick]) pick = i;
    }
    if (!any) throw std::logic_error("greedy_guess: no cards remain");
  }
  return pick;
}

game_trace play(const shuffled_deck& deck, strategy mode) {
  game_trace trace;
  trace.mode = mode;
  trace.correct.reserve(deck.cards.size());
  std::vector<int> counts = deck.spec.mults;
  for (auto it = deck.cards.rbegin(); it != deck.cards.rend(); ++it) {
    const int drawn = *it;
    const int guess = greedy_guess(counts, mode);
    const bool hit = guess == drawn;
    trace.correct.push_back(hit);
    trace.score += hit ? 1 : 0;
    --counts[drawn];
  }
  return trace;
}

}  // namespace cardguess
