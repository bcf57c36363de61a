#pragma once

#include <cstdint>
#include <vector>

// Test-local reference enumeration, kept independent of the library's
// lexicographic-successor iterator: plain recursion over the first part.
namespace testref {

inline void collect(int total, int parts, int lo, int hi,
                    std::vector<int>& prefix,
                    std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(prefix);
    return;
  }
  for (int v = lo; v <= hi && v <= total; ++v) {
    prefix.push_back(v);
    collect(total - v, parts - 1, lo, hi, prefix, out);
    prefix.pop_back();
  }
}

inline std::vector<std::vector<int>> compositions(int total, int parts,
                                                  int lo, int hi) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  collect(total, parts, lo, hi, prefix, out);
  return out;
}

inline std::int64_t composition_count(int total, int parts, int lo, int hi) {
  return static_cast<std::int64_t>(compositions(total, parts, lo, hi).size());
}

}  // namespace testref
