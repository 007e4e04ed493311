#pragma once

#include <cstddef>
#include <span>
#include <utility>

namespace qwlct {

namespace detail {

template <class T, class Term>
T pairwise_range(std::size_t lo, std::size_t hi, Term& term) {
  constexpr std::size_t kLeaf = 32;
  if (hi - lo <= kLeaf) {
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  T left = pairwise_range<T>(lo, mid, term);
  left += pairwise_range<T>(mid, hi, term);
  return left;
}

}  // namespace detail

/// Sums term(0) .. term(n-1) in a fixed binary tree, so the rounding depends
/// only on n and never on how the caller schedules work.
template <class T = double, class Term>
T pairwise_sum(std::size_t n, Term&& term) {
  if (n == 0) return T{};
  return detail::pairwise_range<T>(0, n, term);
}

inline double pairwise_sum(std::span<const double> values) {
  return pairwise_sum<double>(values.size(), [&](std::size_t i) { return values[i]; });
}

}  // namespace qwlct
