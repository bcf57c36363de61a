#include "bjcomp/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace bjcomp {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // After the i-th step acc == C(n-k+i, i), so the division is always exact
  // and an int64 overflow of any prefix implies the result overflows too.
  unsigned __int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned __int128>(n - k + i);
    acc /= static_cast<unsigned __int128>(i);
    if (acc > static_cast<unsigned __int128>(
                  std::numeric_limits<std::int64_t>::max())) {
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " +
                                std::to_string(k) +
                                ") does not fit in a 64-bit integer");
    }
  }
  return static_cast<std::int64_t>(acc);
}

std::int64_t composition_count(std::int64_t parts, std::int64_t total) {
  return binomial(total - 1, parts - 1);
}

std::int64_t composition_count_min2(std::int64_t parts, std::int64_t total) {
  return binomial(total - parts - 1, parts - 1);
}

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p < 1) {
      throw std::invalid_argument("composition parts must be positive, got " +
                                  std::to_string(p));
    }
    sum_ += p;
  }
}

CompositionEnumerator::CompositionEnumerator(int total, int part_count,
                                             int min_part, int max_part)
    : total_(total), min_(min_part), max_(max_part) {
  if (min_part < 1) {
    throw std::invalid_argument("min_part must be at least 1");
  }
  if (max_part < min_part) {
    throw std::invalid_argument("max_part must be at least min_part");
  }
  const bool feasible =
      part_count >= 1 &&
      static_cast<std::int64_t>(min_part) * part_count <= total &&
      total <= static_cast<std::int64_t>(max_part) * part_count;
  if (feasible) {
    current_.resize(static_cast<std::size_t>(part_count));
    fill_smallest(0, total);
    exhausted_ = false;
  }
}

void CompositionEnumerator::fill_smallest(std::size_t from, int remaining) {
  // Smallest lexicographic completion: give every position the least value
  // that leaves the tail enough room to absorb the rest.
  const std::size_t m = current_.size();
  for (std::size_t i = from; i < m; ++i) {
    const int tail = static_cast<int>(m - i - 1);
    const int v = std::max(min_, remaining - max_ * tail);
    current_[i] = v;
    remaining -= v;
  }
}

bool CompositionEnumerator::advance() {
  const std::size_t m = current_.size();
  int tail_sum = current_[m - 1];
  for (std::size_t j = m - 1; j-- > 0;) {
    tail_sum += current_[j];
    const int v = current_[j] + 1;
    const int tail = static_cast<int>(m - j - 1);
    const int rest = tail_sum - v;
    if (v <= max_ && rest >= min_ * tail) {
      current_[j] = v;
      fill_smallest(j + 1, rest);
      return true;
    }
  }
  return false;
}

std::optional<Composition> CompositionEnumerator::next() {
  if (exhausted_) return std::nullopt;
  if (started_ && !advance()) {
    exhausted_ = true;
    return std::nullopt;
  }
  started_ = true;
  return Composition(current_);
}

std::vector<Composition> all_compositions(int total, int part_count,
                                          int min_part, int max_part) {
  std::vector<Composition> out;
  CompositionEnumerator en(total, part_count, min_part, max_part);
  while (auto c = en.next()) out.push_back(std::move(*c));
  return out;
}

std::string render_tableau(const Composition& c, std::string_view glyph) {
  if (c.empty()) {
    throw std::invalid_argument("cannot render the empty composition");
  }
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) out.push_back('\n');
    for (int b = 0; b < c[i]; ++b) out.append(glyph);
  }
  return out;
}

}  // namespace bjcomp
