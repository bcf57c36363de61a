#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bjcomp {

/// C(n, k) as a total function over all integer arguments: the value is 0
/// whenever k < 0, k > n, or n < 0. Exact 64-bit arithmetic; throws
/// std::overflow_error if the result does not fit in an int64_t.
std::int64_t binomial(std::int64_t n, std::int64_t k);

/// Number of compositions of `total` into exactly `parts` positive parts,
/// i.e. C(total-1, parts-1) under the total binomial convention.
std::int64_t composition_count(std::int64_t parts, std::int64_t total);

/// Number of compositions of `total` into exactly `parts` parts, every part
/// at least 2. Equals composition_count(parts, total - parts).
std::int64_t composition_count_min2(std::int64_t parts, std::int64_t total);

/// An ordered sequence of positive integer parts with a cached sum. The
/// empty composition (no parts, sum 0) is a valid value.
class Composition {
 public:
  Composition() = default;
  explicit Composition(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int sum() const noexcept { return sum_; }
  std::size_t size() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }
  int operator[](std::size_t i) const { return parts_[i]; }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition&, const Composition&) = default;

 private:
  std::vector<int> parts_;
  int sum_ = 0;
};

/// Streams every composition of `total` into exactly `part_count` parts,
/// each part in [min_part, max_part], in lexicographic order of the part
/// sequence. Infeasible parameter combinations yield an empty stream.
class CompositionEnumerator {
 public:
  CompositionEnumerator(int total, int part_count, int min_part, int max_part);

  /// Next composition, or nullopt once the stream is exhausted.
  std::optional<Composition> next();

 private:
  void fill_smallest(std::size_t from, int remaining);
  bool advance();

  int total_ = 0;
  int min_ = 1;
  int max_ = 1;
  std::vector<int> current_;
  bool exhausted_ = true;
  bool started_ = false;
};

/// Materializes the full stream of CompositionEnumerator.
std::vector<Composition> all_compositions(int total, int part_count,
                                          int min_part, int max_part);

inline constexpr std::string_view kDefaultTableauGlyph = "■";

/// Left-aligned Young tableau: one row per part, row i holding exactly
/// part-i copies of `glyph`, rows separated by '\n' (no trailing newline).
/// Throws std::invalid_argument for the empty composition.
std::string render_tableau(const Composition& c,
                           std::string_view glyph = kDefaultTableauGlyph);

}  // namespace bjcomp
