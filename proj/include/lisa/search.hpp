#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lisa/fmindex.hpp"
#include "lisa/ipbwt.hpp"
#include "lisa/rmi.hpp"
#include "lisa/seqcore.hpp"

namespace lisa {

enum class LookupMode { rmi, binary };

const char* to_string(LookupMode mode) noexcept;

/// Left-to-right chunks of length k; the last one may be shorter.
std::vector<std::span<const Base>> split_chunks(std::span<const Base> q, unsigned k);

struct ChunkBounds {
  Kmer low;
  Kmer high;
};

/// For 0 < |chunk| < k: low = chunk + '$' + 'A' * (k - |chunk| - 1),
/// high = chunk + 'T' * (k - |chunk|).
ChunkBounds pad_short_chunk(std::span<const Base> chunk, unsigned k);
/// pad_short_chunk for short chunks, the chunk itself for both bounds otherwise.
ChunkBounds chunk_bounds(std::span<const Base> chunk, unsigned k);

struct BuildOptions {
  unsigned k = 21;
  double alpha_mid = Rmi::kDefaultAlphaMid;
  double alpha_leaf = Rmi::kDefaultAlphaLeaf;
  bool with_rmi = true;
};

/// Byte counts of the in-memory structures next to the analytic space model
/// (suffix array 4n, IP-BWT (0.25K + 4)n, RMI ~0.5n, FM-index 6n).
struct IndexSizes {
  std::uint64_t n = 0;
  unsigned k = 0;
  std::size_t suffix_array = 0;
  std::size_t bwt_occ = 0;
  std::size_t ipbwt = 0;
  std::size_t sentinel_table = 0;
  std::size_t rmi = 0;
  std::size_t total() const noexcept { return suffix_array + bwt_occ + ipbwt + sentinel_table + rmi; }
  double model_ipbwt() const noexcept { return (0.25 * k + 4.0) * static_cast<double>(n); }
  double model_lisa() const noexcept { return (8.5 + 0.25 * k) * static_cast<double>(n); }
  double model_fm() const noexcept { return 6.0 * static_cast<double>(n); }
};

class SearchView;

class SearchEngine {
 public:
  SearchEngine(Reference ref, FmIndex fm, IpBwt ipbwt, std::optional<Rmi> rmi);

  static SearchEngine build(Reference ref, const BuildOptions& options = {});
  /// Reference text recovered from the suffix array and the first column.
  static Reference reconstruct_reference(const FmIndex& fm);

  const Reference& reference() const noexcept { return ref_; }
  const FmIndex& fm() const noexcept { return fm_; }
  const IpBwt& ipbwt() const noexcept { return ipbwt_; }
  const Rmi* rmi() const noexcept { return rmi_ ? &*rmi_ : nullptr; }
  bool has_rmi() const noexcept { return rmi_.has_value(); }
  unsigned k() const noexcept { return ipbwt_.k(); }
  std::uint64_t size() const noexcept { return fm_.size(); }

  /// Throws ModeUnavailableError for LookupMode::rmi without a model.
  SearchView view(LookupMode mode) const;

  IndexSizes sizes() const noexcept;

  bool operator==(const SearchEngine&) const = default;

 private:
  Reference ref_;
  FmIndex fm_;
  IpBwt ipbwt_;
  std::optional<Rmi> rmi_;
};

/// Search entry points with a fixed f_K implementation. Cheap to copy; valid
/// while the engine lives.
class SearchView {
 public:
  SearchView(const SearchEngine& engine, LookupMode mode);

  LookupMode mode() const noexcept { return mode_; }

  /// One f_K evaluation on a tagged probe.
  std::size_t f_k(EncodedKey tagged_probe) const noexcept;
  std::size_t f_k(const KmerLoc& probe) const noexcept;

  SaInterval exact_search(std::span<const Base> q) const;
  /// Intervals after each processed chunk (last chunk first). Stops early on
  /// an empty interval, whose entry is kept as computed (not canonicalized).
  std::vector<SaInterval> exact_search_rounds(std::span<const Base> q) const;

  /// Results in input order; invalid queries give nullopt. All valid queries
  /// must share one length (MixedLengthError otherwise). In rmi mode each
  /// round sorts the bound keys of all live queries and resolves them in one
  /// sweep over the leaf models; binary mode searches query by query.
  std::vector<std::optional<SaInterval>> batch_search(std::span<const Query> queries) const;

 private:
  std::vector<std::optional<SaInterval>> batch_rounds(std::span<const Query> queries,
                                                      std::size_t length) const;

  const SearchEngine* engine_;
  LookupMode mode_;
};

}  // namespace lisa
