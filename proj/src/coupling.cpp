#include "cardguess/coupling.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cardguess/birthday.hpp"

namespace cardguess {

std::vector<double> tuple_type_law(const deck_spec& spec, int k) {
  std::vector<double> weights(static_cast<std::size_t>(spec.n), 0.0);
  double total = 0.0;
  for (int i = 0; i < spec.n; ++i) {
    const auto w = static_cast<double>(falling_factorial(spec.mults[i], k));
    weights[static_cast<std::size_t>(i)] = w;
    total += w;
  }
  if (total == 0.0) {
    throw std::domain_error(
        "tuple_type_law: no type has multiplicity >= tuple size");
  }
  for (auto& w : weights) w /= total;
  return weights;
}

std::vector<int> apply_coupling(std::span<const int> cards,
                                std::span<const int> positions, int chosen_type,
                                std::span<const int> star_positions) {
  std::vector<int> out(cards.begin(), cards.end());
  // displaced = cards at s \ s*, in ascending position order
  std::vector<int> displaced;
  for (int p : positions) {
    if (!std::binary_search(star_positions.begin(), star_positions.end(), p)) {
      displaced.push_back(out[static_cast<std::size_t>(p)]);
    }
  }
  // they move into s* \ s keeping relative order
  std::size_t next = 0;
  for (int p : star_positions) {
    if (!std::binary_search(positions.begin(), positions.end(), p)) {
      out[static_cast<std::size_t>(p)] = displaced[next++];
    }
  }
  for (int p : positions) out[static_cast<std::size_t>(p)] = chosen_type;
  return out;
}

coupling_record couple_deck(const shuffled_deck& deck,
                            std::vector<int> positions, rng_stream& rng) {
  std::sort(positions.begin(), positions.end());
  const int k = static_cast<int>(positions.size());
  if (k < 1 || k > deck.spec.max_mult) {
    throw std::domain_error("couple_deck: need 1 <= |s| <= max multiplicity");
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] < 0 || positions[i] >= deck.spec.total_cards ||
        (i > 0 && positions[i] == positions[i - 1])) {
      throw std::invalid_argument("couple_deck: positions must be distinct "
                                  "indices into the deck");
    }
  }

  coupling_record record;
  record.positions = positions;

  const auto law = tuple_type_law(deck.spec, k);
  double u = rng.next_unit();
  int chosen = deck.spec.n - 1;
  for (int i = 0; i < deck.spec.n; ++i) {
    u -= law[static_cast<std::size_t>(i)];
    if (u < 0.0) {
      chosen = i;
      break;
    }
  }
  // the tail of the scan can land on a zero-weight type through rounding
  while (deck.spec.mults[static_cast<std::size_t>(chosen)] < k) --chosen;
  record.chosen_type = chosen;

  std::vector<int> type_positions;
  for (int p = 0; p < static_cast<int>(deck.cards.size()); ++p) {
    if (deck.cards[static_cast<std::size_t>(p)] == chosen) {
      type_positions.push_back(p);
    }
  }
  // uniform k-subset of the chosen type's positions (partial Fisher-Yates)
  for (int i = 0; i < k; ++i) {
    const auto pick =
        static_cast<std::size_t>(i) +
        rng.next_below(type_positions.size() - static_cast<std::size_t>(i));
    std::swap(type_positions[static_cast<std::size_t>(i)],
              type_positions[pick]);
  }
  type_positions.resize(static_cast<std::size_t>(k));
  std::sort(type_positions.begin(), type_positions.end());
  record.star_positions = type_positions;

  record.coupled.spec = deck.spec;
  record.coupled.cards = apply_coupling(deck.cards, record.positions, chosen,
                                        record.star_positions);
  record.original = deck;
  return record;
}

size_bias_sample size_bias_pair(const shuffled_deck& deck, int j, int t,
                                rng_stream& rng) {
  const int k = j + 1;
  if (t < k || t > deck.spec.total_cards) {
    throw std::domain_error("size_bias_pair: need j + 1 <= t <= N");
  }
  // uniform (j+1)-subset of the first t positions
  std::vector<int> pool(static_cast<std::size_t>(t));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const auto pick = static_cast<std::size_t>(i) +
                      rng.next_below(pool.size() - static_cast<std::size_t>(i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[pick]);
  }
  std::vector<int> positions(pool.begin(), pool.begin() + k);
  const auto record = couple_deck(deck, std::move(positions), rng);

  size_bias_sample sample;
  sample.w = tuple_count(deck, j, t);
  sample.w_star = tuple_count(record.coupled, j, t);
  return sample;
}

}  // namespace cardguess
