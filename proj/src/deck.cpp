#include "cardguess/deck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cardguess {

deck_spec make_spec(std::vector<int> mults) {
  if (mults.empty()) {
    throw std::invalid_argument("deck spec needs at least one type");
  }
  deck_spec spec;
  spec.n = static_cast<int>(mults.size());
  for (int m : mults) {
    if (m < 1) {
      throw std::invalid_argument("multiplicities must be positive, got " +
                                  std::to_string(m));
    }
    spec.total_cards += m;
    spec.max_mult = std::max(spec.max_mult, m);
  }
  spec.is_even =
      std::all_of(mults.begin(), mults.end(),
                  [&](int m) { return m == mults.front(); });
  spec.avg_mult =
      static_cast<double>(spec.total_cards) / static_cast<double>(spec.n);
  spec.mults = std::move(mults);
  return spec;
}

deck_spec even_spec(int mult, int types) {
  if (types < 1) throw std::invalid_argument("need at least one type");
  return make_spec(std::vector<int>(static_cast<std::size_t>(types), mult));
}

std::string describe(const deck_spec& spec) {
  if (spec.is_even) {
    return std::to_string(spec.mults.front()) + "x" + std::to_string(spec.n);
  }
  // run-length form, e.g. "2;4" -> "2;4", "6^50;8^50" for long even runs
  std::string out;
  for (int i = 0; i < spec.n;) {
    int run = 1;
    while (i + run < spec.n && spec.mults[i + run] == spec.mults[i]) ++run;
    if (!out.empty()) out += ';';
    out += std::to_string(spec.mults[i]);
    if (run > 1) out += "^" + std::to_string(run);
    i += run;
  }
  return out;
}

long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (long long i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned __int128>(n - k + i);
    acc /= static_cast<unsigned __int128>(i);
    if (acc > static_cast<unsigned __int128>(INT64_MAX)) {
      throw std::overflow_error("binomial coefficient exceeds 64 bits");
    }
  }
  return static_cast<long long>(acc);
}

long long falling_factorial(long long m, int k) {
  long long acc = 1;
  for (int i = 0; i < k; ++i) {
    if (m - i <= 0) return 0;
    acc *= (m - i);
  }
  return acc;
}

namespace {

void require_balance_index(const deck_spec& spec, int j) {
  if (j < 1 || j > spec.max_mult) {
    throw std::domain_error("balance index j must be in [1, max multiplicity]");
  }
}

double average_binomial(const deck_spec& spec, int j) {
  long long sum = 0;
  for (int m : spec.mults) sum += binomial(m, j);
  return static_cast<double>(sum) / static_cast<double>(spec.n);
}

}  // namespace

double gamma_balance(const deck_spec& spec, int j) {
  require_balance_index(spec, j);
  return std::pow(average_binomial(spec, j), 1.0 / static_cast<double>(j));
}

double beta_balance(const deck_spec& spec, int j) {
  require_balance_index(spec, j);
  return average_binomial(spec, j) / std::pow(spec.avg_mult, j);
}

shuffled_deck shuffle(const deck_spec& spec, rng_stream& rng) {
  shuffled_deck deck;
  deck.spec = spec;
  deck.cards.reserve(static_cast<std::size_t>(spec.total_cards));
  for (int type = 0; type < spec.n; ++type) {
    deck.cards.insert(deck.cards.end(),
                      static_cast<std::size_t>(spec.mults[type]), type);
  }
  const auto n = deck.cards.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto pick = i + rng.next_below(n - i);
    std::swap(deck.cards[i], deck.cards[pick]);
  }
  return deck;
}

}  // namespace cardguess
