#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lisa/seqcore.hpp"

namespace lisa {

/// Half-open row range [low, high) of the BW-matrix.
struct SaInterval {
  std::uint64_t low = 0;
  std::uint64_t high = 0;

  bool empty() const noexcept { return low >= high; }
  std::uint64_t size() const noexcept { return empty() ? 0 : high - low; }
  bool operator==(const SaInterval&) const = default;
};

/// Search routines report every empty result as this canonical interval, so
/// results from different lookup strategies compare equal.
inline constexpr SaInterval kNoMatch{0, 0};

/// Sorted-rotation order of the text: sa[i] is the start of the i-th smallest
/// rotation. Built by prefix doubling over rotation ranks with counting sorts,
/// O(n log n). Requires size < 2^32.
std::vector<std::uint32_t> build_suffix_array(const Reference& ref);

/// inverse[sa[i]] == i
std::vector<std::uint32_t> inverse_suffix_array(std::span<const std::uint32_t> sa);

/// Last column of the BW-matrix as symbols ($ = 0).
std::vector<Symbol> build_bwt(const Reference& ref, std::span<const std::uint32_t> sa);

/// Suffix array plus the checkpointed BWT occurrence table.
///
/// The BWT is stored inside the occurrence blocks: each block holds the
/// per-base counts preceding it plus two 64-bit bit-planes of 2-bit codes.
/// The sentinel is stored as code A and corrected via `sentinel_row()`.
class FmIndex {
 public:
  static constexpr std::uint32_t kOccStride = 64;

  struct OccBlock {
    std::array<std::uint32_t, 4> counts{};  // occurrences in rows before this block
    std::uint64_t lo = 0;                   // bit 0 of each code
    std::uint64_t hi = 0;                   // bit 1 of each code
    bool operator==(const OccBlock&) const = default;
  };

  FmIndex() = default;
  FmIndex(const Reference& ref, std::vector<std::uint32_t> sa);
  /// Reassembles an index from persisted parts; validates consistency.
  FmIndex(std::vector<std::uint32_t> sa, std::vector<OccBlock> blocks, std::uint64_t sentinel_row);

  static FmIndex build(const Reference& ref) { return FmIndex(ref, build_suffix_array(ref)); }

  std::uint64_t size() const noexcept { return n_; }
  std::span<const std::uint32_t> sa() const noexcept { return sa_; }
  std::span<const OccBlock> blocks() const noexcept { return blocks_; }
  std::uint64_t sentinel_row() const noexcept { return sentinel_row_; }

  Symbol bwt(std::uint64_t row) const;
  /// D over symbols: d(s) = number of text characters ranked below s. d(A) == 1.
  std::uint64_t d(Symbol s) const noexcept { return d_[s]; }
  std::uint64_t smaller_count(Base b) const noexcept { return d_[to_symbol(b)]; }

  /// Occurrences of `b` in B[0, i]; i == -1 gives 0. Throws std::out_of_range.
  std::uint64_t occ(Base b, std::int64_t i) const;
  /// Occurrences of `b` in B[0, i), 0 <= i <= n, unchecked.
  std::uint64_t rank(Base b, std::uint64_t i) const noexcept;

  /// D(c) + O(c, i-1): lower bound of concat(c, row i). Throws std::out_of_range
  /// unless 0 <= i <= n.
  std::uint64_t fm_step(Base c, std::uint64_t i) const;

  SaInterval backward_search(std::span<const Base> q) const noexcept;
  /// Text positions of the rows in `iv`, ascending.
  std::vector<std::uint64_t> locate(SaInterval iv) const;

  /// First-column symbol of BW-matrix row `row`, derived from D.
  Symbol first_column(std::uint64_t row) const noexcept;

  std::size_t sa_bytes() const noexcept { return sa_.size() * sizeof(std::uint32_t); }
  std::size_t occ_bytes() const noexcept { return blocks_.size() * sizeof(OccBlock); }

  bool operator==(const FmIndex&) const = default;

 private:
  void compute_d();

  std::uint64_t n_ = 0;
  std::vector<std::uint32_t> sa_;
  std::vector<OccBlock> blocks_;
  std::uint64_t sentinel_row_ = 0;
  std::array<std::uint64_t, kAlphabetSize + 1> d_{};
};

}  // namespace lisa
