#include "lisa/ipbwt.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "lisa/detail/partition_point.hpp"
#include "lisa/error.hpp"
#include "lisa/fmindex.hpp"

namespace lisa {

Kmer make_kmer(std::string_view text) {
  if (text.size() > kMaxK) throw ParameterError("k-mer longer than " + std::to_string(kMaxK));
  Kmer kmer;
  for (std::size_t i = 0; i < text.size(); ++i) {
    std::uint64_t c = 0;
    if (text[i] == '$') {
      if (kmer.sentinel >= 0) throw ParameterError("k-mer holds more than one sentinel");
      kmer.sentinel = static_cast<std::int8_t>(i);
    } else {
      c = code(encode_base(text[i], i));
    }
    kmer.bits = kmer.bits << 2 | c;
  }
  return kmer;
}

Kmer make_kmer(std::span<const Base> bases) {
  Kmer kmer;
  for (Base b : bases) kmer.bits = kmer.bits << 2 | code(b);
  return kmer;
}

std::string kmer_string(const Kmer& kmer, unsigned k) {
  std::string s(k, 'A');
  for (unsigned i = 0; i < k; ++i) {
    s[i] = static_cast<int>(i) == kmer.sentinel
               ? '$'
               : decode_base(static_cast<Base>((kmer.bits >> (2 * (k - 1 - i))) & 3));
  }
  return s;
}

EncodedKey encode_key(const Kmer& kmer, std::uint64_t loc, unsigned k) noexcept {
  const std::uint64_t mask = k >= 32 ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * k)) - 1;
  return EncodedKey{kmer.bits & mask} << 32 | static_cast<std::uint32_t>(loc);
}

namespace tagged {

std::strong_ordering compare_slow(EncodedKey a, EncodedKey b, unsigned k) noexcept {
  const int sa = sentinel(a), sb = sentinel(b);
  a = plain(a);
  b = plain(b);
  const unsigned ea = sa < 0 ? k : static_cast<unsigned>(sa);
  const unsigned eb = sb < 0 ? k : static_cast<unsigned>(sb);
  const unsigned s = std::min(ea, eb);
  if (s == k) return a <=> b;
  if (s > 0) {
    const unsigned shift = 32 + 2 * (k - s);
    const EncodedKey pa = a >> shift, pb = b >> shift;
    if (pa != pb) return pa <=> pb;
  }
  const bool a_here = ea == s, b_here = eb == s;
  if (a_here != b_here) return a_here ? std::strong_ordering::less : std::strong_ordering::greater;
  const EncodedKey rest = (EncodedKey{1} << (32 + 2 * (k - s - 1))) - 1;
  return (a & rest) <=> (b & rest);
}

}  // namespace tagged

std::strong_ordering true_compare(const KmerLoc& a, const KmerLoc& b, unsigned k) noexcept {
  return tagged::compare_slow(tagged::make(encode_key(a.kmer, a.loc, k), a.kmer.sentinel),
                              tagged::make(encode_key(b.kmer, b.loc, k), b.kmer.sentinel), k);
}

IpBwt::IpBwt(const Reference& ref, std::span<const std::uint32_t> sa, unsigned k) : k_(k) {
  const std::uint64_t n = ref.size();
  if (n >= std::numeric_limits<std::uint32_t>::max()) {
    throw ParameterError("reference too long: locations must fit in 32 bits");
  }
  if (k < 1 || k > kMaxK || k > n - 1) {
    throw ParameterError("k = " + std::to_string(k) + " outside [1, " +
                         std::to_string(std::min<std::uint64_t>(kMaxK, n - 1)) + "]");
  }
  if (sa.size() != n) throw std::invalid_argument("suffix array size does not match reference");

  const auto inverse = inverse_suffix_array(sa);
  const std::uint64_t mask = (std::uint64_t{1} << (2 * k)) - 1;
  auto code_at = [&](std::uint64_t pos) -> std::uint64_t {
    const Symbol s = ref.symbol(pos);
    return s == kSentinelSymbol ? 0 : s - 1;
  };

  keys_.assign(n, 0);
  std::uint64_t bits = 0;
  for (unsigned i = 0; i < k; ++i) bits = bits << 2 | code_at(i);
  for (std::uint64_t p = 0; p < n; ++p) {
    if (p > 0) {
      std::uint64_t next = p + k - 1;
      if (next >= n) next -= n;
      bits = (bits << 2 | code_at(next)) & mask;
    }
    std::uint64_t after = p + k;
    if (after >= n) after -= n;
    const EncodedKey plain = EncodedKey{bits} << 32 | inverse[after];
    const std::uint64_t row = inverse[p];
    if (p + k >= n) {
      const auto offset = static_cast<std::uint8_t>(n - 1 - p);
      keys_[row] = tagged::make(plain, offset);
      sentinel_rows_.push_back({row, offset});
    } else {
      keys_[row] = plain;
    }
  }
  std::sort(sentinel_rows_.begin(), sentinel_rows_.end(),
            [](const SentinelRow& a, const SentinelRow& b) { return a.row < b.row; });
  finish_sentinel_rows();
}

IpBwt::IpBwt(unsigned k, std::vector<EncodedKey> plain_keys, std::vector<SentinelRow> sentinel_rows)
    : k_(k), keys_(std::move(plain_keys)), sentinel_rows_(std::move(sentinel_rows)) {
  if (k < 1 || k > kMaxK || k >= keys_.size()) throw CorruptIndexError("ip-bwt", "k out of range");
  if (sentinel_rows_.size() != k) throw CorruptIndexError("sentinel table", "expected K rows");
  for (std::size_t j = 0; j < sentinel_rows_.size(); ++j) {
    const auto& s = sentinel_rows_[j];
    if (s.row >= keys_.size() || s.offset >= k || (j > 0 && s.row <= sentinel_rows_[j - 1].row)) {
      throw CorruptIndexError("sentinel table", "row entry out of range or unsorted");
    }
    keys_[s.row] = tagged::make(keys_[s.row], s.offset);
  }
  finish_sentinel_rows();
}

void IpBwt::finish_sentinel_rows() {
  route_.assign(sentinel_rows_.size(), 0);
  for (std::size_t j = sentinel_rows_.size(); j-- > 0;) {
    const std::uint64_t row = sentinel_rows_[j].row;
    EncodedKey route = key(row);
    if (row + 1 < keys_.size()) {
      const bool next_is_sentinel = j + 1 < sentinel_rows_.size() && sentinel_rows_[j + 1].row == row + 1;
      route = std::min(route, next_is_sentinel ? route_[j + 1] : key(row + 1));
    }
    route_[j] = route;
  }
}

EncodedKey IpBwt::route_key(std::size_t i) const noexcept {
  if (!is_sentinel_row(i)) return key(i);
  auto it = std::lower_bound(sentinel_rows_.begin(), sentinel_rows_.end(), i,
                             [](const SentinelRow& s, std::size_t row) { return s.row < row; });
  return route_[static_cast<std::size_t>(it - sentinel_rows_.begin())];
}

KmerLoc IpBwt::entry(std::size_t i) const noexcept {
  const EncodedKey t = keys_[i];
  KmerLoc out;
  out.kmer.bits = key_kmer_bits(tagged::plain(t));
  out.kmer.sentinel = static_cast<std::int8_t>(tagged::sentinel(t));
  out.loc = key_loc(t);
  return out;
}

std::size_t IpBwt::lower_bound(const KmerLoc& probe) const noexcept {
  return lower_bound(tagged::make(encode_key(probe.kmer, probe.loc, k_), probe.kmer.sentinel));
}

std::size_t IpBwt::lower_bound(EncodedKey tagged_probe) const noexcept {
  return detail::binary_partition_point(
      0, keys_.size(), [&](std::size_t i) { return entry_less(i, tagged_probe); });
}

std::size_t IpBwt::linear_lower_bound(std::size_t hint, EncodedKey tagged_probe) const noexcept {
  return detail::linear_partition_point(
      hint, keys_.size(), [&](std::size_t i) { return entry_less(i, tagged_probe); });
}

std::size_t IpBwt::exponential_lower_bound(std::size_t hint, EncodedKey tagged_probe) const noexcept {
  return detail::exponential_partition_point(
      hint, keys_.size(), [&](std::size_t i) { return entry_less(i, tagged_probe); });
}

}  // namespace lisa
