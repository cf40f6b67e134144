#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "lisa/search.hpp"

namespace lisa {

/// Binary index layout, all integers little-endian:
///
///   "LSA1" | u16 version | u16 K | u64 n | u32 flags (bit 0: RMI present)
///   | u32 occ stride | f64 alpha_mid | f64 alpha_leaf
///   suffix array     n x u32
///   bwt/occ          u64 sentinel row, (n / stride + 1) x {4 x u32 counts, u64 lo, u64 hi}
///   ip-bwt keys      n x {u64 low word, u64 high word}, untagged
///   sentinel table   u32 count (== K), count x {u64 row, u8 offset}
///   rmi (flag)       u32 layers, per layer (root first): u64 models, u64 target size,
///                    models x {f64 slope, f64 intercept, f64 avg error},
///                    models x {u64 low word, u64 high word} boundary keys
inline constexpr char kIndexMagic[4] = {'L', 'S', 'A', '1'};
inline constexpr std::uint16_t kIndexVersion = 1;
inline constexpr std::uint32_t kFlagRmi = 1;

void save_index(const SearchEngine& engine, std::ostream& out);
void save_index_file(const SearchEngine& engine, const std::string& path);

/// Throws CorruptIndexError naming the section that failed to parse.
SearchEngine load_index(std::istream& in);
SearchEngine load_index_file(const std::string& path);

}  // namespace lisa
