#include <algorithm>
#include <limits>

#include "lisa/error.hpp"
#include "lisa/fmindex.hpp"

namespace lisa {

std::vector<std::uint32_t> build_suffix_array(const Reference& ref) {
  const std::uint64_t n = ref.size();
  if (n >= std::numeric_limits<std::uint32_t>::max()) {
    throw ParameterError("reference too long: rotation indices must fit in 32 bits");
  }
  std::vector<std::uint32_t> sa(n), cls(n), tmp(n);
  std::vector<std::uint32_t> cnt(std::max<std::uint64_t>(n, kAlphabetSize) + 1, 0);

  for (std::uint64_t i = 0; i < n; ++i) ++cnt[ref.symbol(i)];
  for (int s = 1; s < kAlphabetSize; ++s) cnt[s] += cnt[s - 1];
  for (std::uint64_t i = n; i-- > 0;) sa[--cnt[ref.symbol(i)]] = static_cast<std::uint32_t>(i);

  std::uint32_t classes = 1;
  cls[sa[0]] = 0;
  for (std::uint64_t i = 1; i < n; ++i) {
    if (ref.symbol(sa[i]) != ref.symbol(sa[i - 1])) ++classes;
    cls[sa[i]] = classes - 1;
  }

  // Rotations of length 2h are ordered by (class of the first h, class of the
  // next h). Shifting the current order by -h already sorts by the second
  // half, so one stable counting pass on the first half suffices.
  for (std::uint64_t h = 1; classes < n; h <<= 1) {
    for (std::uint64_t i = 0; i < n; ++i) {
      tmp[i] = static_cast<std::uint32_t>(sa[i] >= h ? sa[i] - h : sa[i] + n - h);
    }
    std::fill(cnt.begin(), cnt.begin() + classes, 0);
    for (std::uint64_t i = 0; i < n; ++i) ++cnt[cls[tmp[i]]];
    for (std::uint32_t c = 1; c < classes; ++c) cnt[c] += cnt[c - 1];
    for (std::uint64_t i = n; i-- > 0;) sa[--cnt[cls[tmp[i]]]] = tmp[i];

    auto second = [&](std::uint32_t p) {
      std::uint64_t q = p + h;
      return cls[q >= n ? q - n : q];
    };
    tmp[sa[0]] = 0;
    std::uint32_t next = 1;
    for (std::uint64_t i = 1; i < n; ++i) {
      if (cls[sa[i]] != cls[sa[i - 1]] || second(sa[i]) != second(sa[i - 1])) ++next;
      tmp[sa[i]] = next - 1;
    }
    cls.swap(tmp);
    classes = next;
  }
  return sa;
}

std::vector<std::uint32_t> inverse_suffix_array(std::span<const std::uint32_t> sa) {
  std::vector<std::uint32_t> inv(sa.size());
  for (std::size_t i = 0; i < sa.size(); ++i) inv[sa[i]] = static_cast<std::uint32_t>(i);
  return inv;
}

std::vector<Symbol> build_bwt(const Reference& ref, std::span<const std::uint32_t> sa) {
  const std::uint64_t n = ref.size();
  std::vector<Symbol> bwt(n);
  for (std::uint64_t i = 0; i < n; ++i) bwt[i] = ref.symbol(sa[i] == 0 ? n - 1 : sa[i] - 1);
  return bwt;
}

}  // namespace lisa
