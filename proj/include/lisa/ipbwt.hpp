#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lisa/seqcore.hpp"

namespace lisa {

/// (kmer, loc) packed as an integer: the top 2K bits of the low 2K+32 bits are
/// the base codes (first character most significant, $ -> 0), the low 32 bits
/// are the location.
using EncodedKey = unsigned __int128;

/// A K-character string over {$,A,C,G,T} holding at most one sentinel.
struct Kmer {
  std::uint64_t bits = 0;     // 2 bits per character, first character most significant
  std::int8_t sentinel = -1;  // offset of '$', -1 when absent

  bool operator==(const Kmer&) const = default;
};

struct KmerLoc {
  Kmer kmer;
  std::uint64_t loc = 0;
};

inline constexpr unsigned kMaxK = 28;

/// Parses "ACG$A"-style text (tests and tooling).
Kmer make_kmer(std::string_view text);
Kmer make_kmer(std::span<const Base> bases);
std::string kmer_string(const Kmer& kmer, unsigned k);

EncodedKey encode_key(const Kmer& kmer, std::uint64_t loc, unsigned k) noexcept;
inline std::uint64_t key_loc(EncodedKey key) noexcept { return static_cast<std::uint32_t>(key); }
inline std::uint64_t key_kmer_bits(EncodedKey key) noexcept {
  return static_cast<std::uint64_t>(key >> 32);
}

/// Lexicographic on the k-mer with $ < A < C < G < T, then by loc.
std::strong_ordering true_compare(const KmerLoc& a, const KmerLoc& b, unsigned k) noexcept;

/// Tagged keys carry the sentinel offset + 1 in bits [120, 128); 0 means no
/// sentinel. Untagged pairs compare correctly as plain integers.
namespace tagged {

inline constexpr unsigned kTagShift = 120;
inline constexpr EncodedKey kKeyMask = (EncodedKey{1} << kTagShift) - 1;

inline EncodedKey make(EncodedKey plain, int sentinel) noexcept {
  return sentinel < 0 ? plain : plain | (EncodedKey{static_cast<unsigned>(sentinel) + 1} << kTagShift);
}
inline EncodedKey plain(EncodedKey key) noexcept { return key & kKeyMask; }
inline int sentinel(EncodedKey key) noexcept { return static_cast<int>(key >> kTagShift) - 1; }

std::strong_ordering compare_slow(EncodedKey a, EncodedKey b, unsigned k) noexcept;

inline bool less(EncodedKey a, EncodedKey b, unsigned k) noexcept {
  if (((a | b) >> kTagShift) == 0) return a < b;
  return compare_slow(a, b, k) < 0;
}

}  // namespace tagged

/// Index-Paired BWT: row i holds (first K characters of BW-matrix row i, row
/// of the rotation starting K characters later).
class IpBwt {
 public:
  struct SentinelRow {
    std::uint64_t row = 0;
    std::uint8_t offset = 0;  // position of '$' within the k-mer
    bool operator==(const SentinelRow&) const = default;
  };

  IpBwt() = default;
  /// Throws ParameterError unless 1 <= k <= min(kMaxK, n-1) and n < 2^32.
  IpBwt(const Reference& ref, std::span<const std::uint32_t> sa, unsigned k);
  /// Reassembles from persisted untagged keys and the sentinel side table.
  IpBwt(unsigned k, std::vector<EncodedKey> plain_keys, std::vector<SentinelRow> sentinel_rows);

  unsigned k() const noexcept { return k_; }
  std::size_t size() const noexcept { return keys_.size(); }

  EncodedKey key(std::size_t i) const noexcept { return tagged::plain(keys_[i]); }
  EncodedKey tagged_key(std::size_t i) const noexcept { return keys_[i]; }
  KmerLoc entry(std::size_t i) const noexcept;
  std::span<const SentinelRow> sentinel_rows() const noexcept { return sentinel_rows_; }
  bool is_sentinel_row(std::size_t i) const noexcept { return (keys_[i] >> tagged::kTagShift) != 0; }

  /// Nondecreasing key sequence used for model fitting and leaf routing. It
  /// equals key(i) except on sentinel rows, whose encoding can sort above
  /// later entries; those take the minimum of the keys that follow.
  EncodedKey route_key(std::size_t i) const noexcept;

  bool entry_less(std::size_t i, EncodedKey probe) const noexcept {
    return tagged::less(keys_[i], probe, k_);
  }

  /// f_K by binary search: first entry not less than the probe.
  std::size_t lower_bound(const KmerLoc& probe) const noexcept;
  std::size_t lower_bound(EncodedKey tagged_probe) const noexcept;

  /// Same result as lower_bound, found by scanning outward from `hint`.
  std::size_t linear_lower_bound(std::size_t hint, EncodedKey tagged_probe) const noexcept;
  /// Same result, found by doubling steps from `hint` then bisection.
  std::size_t exponential_lower_bound(std::size_t hint, EncodedKey tagged_probe) const noexcept;

  std::size_t key_bytes() const noexcept { return keys_.size() * sizeof(EncodedKey); }
  std::size_t side_table_bytes() const noexcept {
    return sentinel_rows_.size() * sizeof(SentinelRow) + route_.size() * sizeof(EncodedKey);
  }

  bool operator==(const IpBwt&) const = default;

 private:
  void finish_sentinel_rows();

  unsigned k_ = 0;
  std::vector<EncodedKey> keys_;  // tagged
  std::vector<SentinelRow> sentinel_rows_;  // ascending by row
  std::vector<EncodedKey> route_;  // parallel to sentinel_rows_
};

}  // namespace lisa
