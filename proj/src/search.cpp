#include "lisa/search.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "lisa/error.hpp"

namespace lisa {

namespace {

// Batch sort records pack (plain key << kSlotBits) | slot into one integer;
// plain keys use at most 2 * kMaxK + 32 = 88 bits.
constexpr unsigned kSlotBits = 40;
constexpr EncodedKey kSlotMask = (EncodedKey{1} << kSlotBits) - 1;
static_assert(2 * kMaxK + 32 + kSlotBits <= 128);

}  // namespace

const char* to_string(LookupMode mode) noexcept { return mode == LookupMode::rmi ? "rmi" : "binary"; }

std::vector<std::span<const Base>> split_chunks(std::span<const Base> q, unsigned k) {
  std::vector<std::span<const Base>> out;
  for (std::size_t i = 0; i < q.size(); i += k) out.push_back(q.subspan(i, std::min<std::size_t>(k, q.size() - i)));
  return out;
}

ChunkBounds pad_short_chunk(std::span<const Base> chunk, unsigned k) {
  if (chunk.empty() || chunk.size() >= k) throw ParameterError("pad_short_chunk needs 0 < |chunk| < k");
  const unsigned pad = k - static_cast<unsigned>(chunk.size());
  const std::uint64_t prefix = make_kmer(chunk).bits << (2 * pad);
  ChunkBounds b;
  b.low.bits = prefix;
  b.low.sentinel = static_cast<std::int8_t>(chunk.size());
  b.high.bits = prefix | ((std::uint64_t{1} << (2 * pad)) - 1);
  return b;
}

ChunkBounds chunk_bounds(std::span<const Base> chunk, unsigned k) {
  if (chunk.size() < k) return pad_short_chunk(chunk, k);
  const Kmer kmer = make_kmer(chunk);
  return {kmer, kmer};
}

SearchEngine::SearchEngine(Reference ref, FmIndex fm, IpBwt ipbwt, std::optional<Rmi> rmi)
    : ref_(std::move(ref)), fm_(std::move(fm)), ipbwt_(std::move(ipbwt)), rmi_(std::move(rmi)) {
  if (ref_.size() != fm_.size() || fm_.size() != ipbwt_.size()) {
    throw std::invalid_argument("engine components built from different references");
  }
}

SearchEngine SearchEngine::build(Reference ref, const BuildOptions& options) {
  auto sa = build_suffix_array(ref);
  IpBwt ipbwt(ref, sa, options.k);
  FmIndex fm(ref, std::move(sa));
  std::optional<Rmi> rmi;
  if (options.with_rmi) rmi.emplace(ipbwt, options.alpha_mid, options.alpha_leaf);
  return SearchEngine(std::move(ref), std::move(fm), std::move(ipbwt), std::move(rmi));
}

Reference SearchEngine::reconstruct_reference(const FmIndex& fm) {
  const std::uint64_t n = fm.size();
  std::vector<Base> bases(n - 1);
  const auto sa = fm.sa();
  std::vector<bool> seen(n, false);
  for (std::uint64_t row = 0; row < n; ++row) {
    if (sa[row] >= n || seen[sa[row]]) throw CorruptIndexError("suffix array", "not a permutation");
    seen[sa[row]] = true;
    const Symbol s = fm.first_column(row);
    if (sa[row] == n - 1) continue;
    if (s == kSentinelSymbol) throw CorruptIndexError("suffix array", "sentinel outside the last position");
    bases[sa[row]] = static_cast<Base>(s - 1);
  }
  return Reference("", std::move(bases));
}

SearchView SearchEngine::view(LookupMode mode) const { return SearchView(*this, mode); }

IndexSizes SearchEngine::sizes() const noexcept {
  IndexSizes s;
  s.n = size();
  s.k = k();
  s.suffix_array = fm_.sa_bytes();
  s.bwt_occ = fm_.occ_bytes();
  s.ipbwt = ipbwt_.key_bytes();
  s.sentinel_table = ipbwt_.side_table_bytes();
  s.rmi = rmi_ ? rmi_->bytes() : 0;
  return s;
}

SearchView::SearchView(const SearchEngine& engine, LookupMode mode) : engine_(&engine), mode_(mode) {
  if (mode == LookupMode::rmi && !engine.has_rmi()) {
    throw ModeUnavailableError("rmi mode requested but the index carries no RMI");
  }
}

std::size_t SearchView::f_k(EncodedKey tagged_probe) const noexcept {
  const auto& ip = engine_->ipbwt();
  return mode_ == LookupMode::rmi ? engine_->rmi()->lower_bound(ip, tagged_probe) : ip.lower_bound(tagged_probe);
}

std::size_t SearchView::f_k(const KmerLoc& probe) const noexcept {
  return f_k(tagged::make(encode_key(probe.kmer, probe.loc, engine_->k()), probe.kmer.sentinel));
}

std::vector<SaInterval> SearchView::exact_search_rounds(std::span<const Base> q) const {
  const unsigned k = engine_->k();
  std::vector<SaInterval> rounds;
  SaInterval iv{0, engine_->size()};
  const auto chunks = split_chunks(q, k);
  for (std::size_t j = chunks.size(); j-- > 0;) {
    const auto chunk = chunks[j];
    if (chunk.size() < k && (j + 1 != chunks.size() || iv.low != 0 || iv.high != engine_->size())) {
      throw std::logic_error("short chunk reached outside the first round");
    }
    const ChunkBounds b = chunk_bounds(chunk, k);
    iv.low = f_k(KmerLoc{b.low, iv.low});
    iv.high = f_k(KmerLoc{b.high, iv.high});
    rounds.push_back(iv);
    if (iv.low >= iv.high) break;
  }
  return rounds;
}

SaInterval SearchView::exact_search(std::span<const Base> q) const {
  const unsigned k = engine_->k();
  std::uint64_t low = 0, high = engine_->size();
  const std::size_t count = (q.size() + k - 1) / k;
  for (std::size_t j = count; j-- > 0;) {
    const auto chunk = q.subspan(j * k, std::min<std::size_t>(k, q.size() - j * k));
    const ChunkBounds b = chunk_bounds(chunk, k);
    low = f_k(tagged::make(encode_key(b.low, low, k), b.low.sentinel));
    high = f_k(tagged::make(encode_key(b.high, high, k), b.high.sentinel));
    if (low >= high) return kNoMatch;
  }
  return {low, high};
}

std::vector<std::optional<SaInterval>> SearchView::batch_search(std::span<const Query> queries) const {
  std::optional<std::size_t> length;
  for (const auto& q : queries) {
    if (!q.valid()) continue;
    if (!length) {
      length = q.size();
    } else if (*length != q.size()) {
      throw MixedLengthError("batch mixes query lengths " + std::to_string(*length) + " and " +
                             std::to_string(q.size()));
    }
  }
  std::vector<std::optional<SaInterval>> out(queries.size());
  if (!length) return out;
  if (mode_ == LookupMode::binary || *length == 0) {
    for (std::size_t i = 0; i < queries.size(); ++i) {
      if (queries[i].valid()) out[i] = exact_search(queries[i].bases);
    }
    return out;
  }
  return batch_rounds(queries, *length);
}

std::vector<std::optional<SaInterval>> SearchView::batch_rounds(std::span<const Query> queries,
                                                                 std::size_t length) const {
  const unsigned k = engine_->k();
  const auto& ip = engine_->ipbwt();
  const Rmi& rmi = *engine_->rmi();
  const auto& leaves = rmi.leaf_layer().boundaries;
  const bool single_layer = rmi.layers().size() == 1;
  const std::uint64_t n = engine_->size();

  std::vector<std::size_t> live;  // indices into `queries`
  live.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (queries[i].valid()) live.push_back(i);
  }
  std::vector<std::uint64_t> low(live.size(), 0), high(live.size(), n);
  std::vector<EncodedKey> records;
  records.reserve(2 * live.size());

  const std::size_t rounds = (length + k - 1) / k;
  for (std::size_t round = 0; round < rounds && !live.empty(); ++round) {
    const std::size_t chunk_index = rounds - 1 - round;
    const std::size_t begin = chunk_index * k;
    const std::size_t chunk_len = std::min<std::size_t>(k, length - begin);
    const int low_sentinel = chunk_len < k ? static_cast<int>(chunk_len) : -1;

    records.clear();
    for (std::size_t a = 0; a < live.size(); ++a) {
      const auto chunk = std::span<const Base>(queries[live[a]].bases).subspan(begin, chunk_len);
      const ChunkBounds b = chunk_bounds(chunk, k);
      records.push_back(encode_key(b.low, low[a], k) << kSlotBits | EncodedKey{2 * a});
      records.push_back(encode_key(b.high, high[a], k) << kSlotBits | EncodedKey{2 * a + 1});
    }
    std::sort(records.begin(), records.end());

    std::size_t leaf = 0;
    for (const EncodedKey rec : records) {
      const EncodedKey plain = rec >> kSlotBits;
      const auto slot = static_cast<std::size_t>(rec & kSlotMask);
      while (leaf + 1 < leaves.size() && plain >= leaves[leaf + 1]) ++leaf;
      const std::size_t guess = rmi.predict_in_leaf(leaf, plain);
      const bool is_low = (slot & 1) == 0;
      const EncodedKey probe = is_low ? tagged::make(plain, low_sentinel) : plain;
      const std::size_t pos =
          single_layer ? ip.exponential_lower_bound(guess, probe) : ip.linear_lower_bound(guess, probe);
      (is_low ? low : high)[slot >> 1] = pos;
    }

    std::size_t kept = 0;
    for (std::size_t a = 0; a < live.size(); ++a) {
      if (low[a] < high[a]) {
        live[kept] = live[a];
        low[kept] = low[a];
        high[kept] = high[a];
        ++kept;
      }
    }
    live.resize(kept);
    low.resize(kept);
    high.resize(kept);
  }

  std::vector<std::optional<SaInterval>> out(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (queries[i].valid()) out[i] = kNoMatch;
  }
  for (std::size_t a = 0; a < live.size(); ++a) out[live[a]] = SaInterval{low[a], high[a]};
  return out;
}

}  // namespace lisa
