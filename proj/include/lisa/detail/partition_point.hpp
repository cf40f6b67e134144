#pragma once

#include <algorithm>
#include <cstddef>

namespace lisa::detail {

// All helpers return the first index i in [0, n] with !before(i), where
// `before` is true on a prefix of [0, n) and false afterwards.

template <class Before>
std::size_t binary_partition_point(std::size_t lo, std::size_t hi, Before before) {
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (before(mid)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo;
}

template <class Before>
std::size_t linear_partition_point(std::size_t hint, std::size_t n, Before before) {
  std::size_t i = std::min(hint, n);
  if (i < n && before(i)) {
    do {
      ++i;
    } while (i < n && before(i));
    return i;
  }
  while (i > 0 && !before(i - 1)) --i;
  return i;
}

template <class Before>
std::size_t exponential_partition_point(std::size_t hint, std::size_t n, Before before) {
  const std::size_t i = std::min(hint, n);
  if (i < n && before(i)) {
    std::size_t lo = i + 1, step = 1, probe = i + 1;
    while (probe < n && before(probe)) {
      lo = probe + 1;
      step <<= 1;
      probe = i + step;
    }
    return binary_partition_point(lo, std::min(probe, n), before);
  }
  // answer <= i
  std::size_t hi = i, step = 1;
  while (hi > 0) {
    const std::size_t probe = hi >= step ? hi - step : 0;
    if (before(probe)) return binary_partition_point(probe + 1, hi, before);
    hi = probe;
    step <<= 1;
  }
  return 0;
}

}  // namespace lisa::detail
