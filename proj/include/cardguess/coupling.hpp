#pragma once

#include <span>
#include <vector>

#include "cardguess/deck.hpp"

namespace cardguess {

// One sample of the conditional-law deck coupling: given an index set s, the
// coupled deck has all positions of s holding one randomly chosen type, and
// its (marginal) law equals the law of the original deck conditioned on the
// cards at s all sharing a type. Positions are 0-based.
struct coupling_record {
  shuffled_deck original;
  std::vector<int> positions;       // s, sorted
  int chosen_type = 0;              // I
  std::vector<int> star_positions;  // s*, sorted positions of type I
  shuffled_deck coupled;
};

// Law of the chosen type I for tuples of size k: P(I = i) proportional to the
// falling factorial m_i (m_i - 1) ... (m_i - k + 1), i.e. the conditional law
// of the common type given that k exchangeable positions agree. Types with
// m_i < k have probability zero. Throws std::domain_error if no type has
// multiplicity >= k (the conditioning event is impossible).
std::vector<double> tuple_type_law(const deck_spec& spec, int k);

// The deterministic rearrangement step: cards at positions s \ s* move into
// positions s* \ s preserving relative order, and the displaced cards of
// `chosen_type` fill s \ s* (their order is immaterial; ascending position
// order is used). Both position sets must be sorted and of equal size, and
// every card at s* must already be of chosen_type.
std::vector<int> apply_coupling(std::span<const int> cards,
                                std::span<const int> positions, int chosen_type,
                                std::span<const int> star_positions);

// Samples the full coupling: chooses I from tuple_type_law, s* uniformly among
// the C(m_I, |s|) position subsets of type-I cards, and rearranges. Requires
// |s| <= max_mult, s sorted, within range, duplicate-free.
coupling_record couple_deck(const shuffled_deck& deck,
                            std::vector<int> positions, rng_stream& rng);

// A size-bias coupled pair for the tuple count W_j(t): w is the tuple count of
// the deck, w_star the tuple count of the deck coupled along a uniformly
// random (j+1)-subset of {0, ..., t-1}. Always w_star <= w + C(max_mult, j+1).
struct size_bias_sample {
  long long w = 0;
  long long w_star = 0;
};
size_bias_sample size_bias_pair(const shuffled_deck& deck, int j, int t,
                                rng_stream& rng);

}  // namespace cardguess
