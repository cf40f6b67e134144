#include "lisa/fmindex.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "lisa/error.hpp"

namespace lisa {

namespace {

inline std::uint64_t code_mask(std::uint64_t lo, std::uint64_t hi, std::uint8_t c) noexcept {
  switch (c) {
    case 0: return ~hi & ~lo;
    case 1: return ~hi & lo;
    case 2: return hi & ~lo;
    default: return hi & lo;
  }
}

}  // namespace

FmIndex::FmIndex(const Reference& ref, std::vector<std::uint32_t> sa)
    : n_(ref.size()), sa_(std::move(sa)) {
  if (sa_.size() != n_) throw std::invalid_argument("suffix array size does not match reference");
  blocks_.assign(n_ / kOccStride + 1, OccBlock{});
  std::array<std::uint32_t, 4> running{};
  for (std::uint64_t i = 0; i < n_; ++i) {
    auto& blk = blocks_[i / kOccStride];
    if (i % kOccStride == 0) blk.counts = running;
    const std::uint64_t pos = sa_[i] == 0 ? n_ - 1 : sa_[i] - 1;
    const Symbol s = ref.symbol(pos);
    if (s == kSentinelSymbol) {
      sentinel_row_ = i;
      continue;  // stored as code 0, never counted
    }
    const std::uint8_t c = s - 1;
    const std::uint64_t bit = std::uint64_t{1} << (i % kOccStride);
    if (c & 1) blk.lo |= bit;
    if (c & 2) blk.hi |= bit;
    ++running[c];
  }
  if (n_ % kOccStride == 0) blocks_.back().counts = running;
  compute_d();
}

FmIndex::FmIndex(std::vector<std::uint32_t> sa, std::vector<OccBlock> blocks,
                 std::uint64_t sentinel_row)
    : n_(sa.size()), sa_(std::move(sa)), blocks_(std::move(blocks)), sentinel_row_(sentinel_row) {
  if (n_ < 2) throw CorruptIndexError("suffix array", "fewer than two rows");
  if (blocks_.size() != n_ / kOccStride + 1) {
    throw CorruptIndexError("occurrence table", "block count does not match n");
  }
  if (sentinel_row_ >= n_) throw CorruptIndexError("occurrence table", "sentinel row out of range");
  compute_d();
  if (d_[kAlphabetSize] != n_) {
    throw CorruptIndexError("occurrence table", "base counts do not sum to n - 1");
  }
}

void FmIndex::compute_d() {
  d_[0] = 0;
  d_[1] = 1;
  for (int c = 0; c < 4; ++c) d_[c + 2] = d_[c + 1] + rank(static_cast<Base>(c), n_);
}

Symbol FmIndex::bwt(std::uint64_t row) const {
  if (row >= n_) throw std::out_of_range("bwt row out of range");
  if (row == sentinel_row_) return kSentinelSymbol;
  const auto& blk = blocks_[row / kOccStride];
  const unsigned off = row % kOccStride;
  return static_cast<Symbol>((((blk.hi >> off) & 1) << 1 | ((blk.lo >> off) & 1)) + 1);
}

std::uint64_t FmIndex::rank(Base b, std::uint64_t i) const noexcept {
  const std::uint8_t c = code(b);
  const auto& blk = blocks_[i / kOccStride];
  const unsigned off = i % kOccStride;
  std::uint64_t m = code_mask(blk.lo, blk.hi, c);
  m = off == 0 ? 0 : m & (~std::uint64_t{0} >> (kOccStride - off));
  std::uint64_t count = blk.counts[c] + static_cast<std::uint64_t>(std::popcount(m));
  if (c == 0 && sentinel_row_ < i && sentinel_row_ / kOccStride == i / kOccStride) --count;
  return count;
}

std::uint64_t FmIndex::occ(Base b, std::int64_t i) const {
  if (i < -1 || i >= static_cast<std::int64_t>(n_)) {
    throw std::out_of_range("occ index " + std::to_string(i) + " outside [-1, n)");
  }
  return rank(b, static_cast<std::uint64_t>(i + 1));
}

std::uint64_t FmIndex::fm_step(Base c, std::uint64_t i) const {
  if (i > n_) throw std::out_of_range("fm_step row " + std::to_string(i) + " outside [0, n]");
  return d_[to_symbol(c)] + rank(c, i);
}

SaInterval FmIndex::backward_search(std::span<const Base> q) const noexcept {
  std::uint64_t low = 0, high = n_;
  for (std::size_t j = q.size(); j-- > 0;) {
    const std::uint64_t base = d_[to_symbol(q[j])];
    low = base + rank(q[j], low);
    high = base + rank(q[j], high);
    if (low >= high) return kNoMatch;
  }
  return {low, high};
}

std::vector<std::uint64_t> FmIndex::locate(SaInterval iv) const {
  if (iv.empty()) return {};
  if (iv.high > n_) throw std::out_of_range("interval exceeds index size");
  std::vector<std::uint64_t> out(sa_.begin() + iv.low, sa_.begin() + iv.high);
  std::sort(out.begin(), out.end());
  return out;
}

Symbol FmIndex::first_column(std::uint64_t row) const noexcept {
  Symbol s = 0;
  while (s + 1 < kAlphabetSize && d_[s + 1] <= row) ++s;
  return s;
}

}  // namespace lisa
