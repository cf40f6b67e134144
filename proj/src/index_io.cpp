#include "lisa/index_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <type_traits>

#include "lisa/error.hpp"

namespace lisa {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
T to_le(T v) noexcept {
  if constexpr (std::endian::native == std::endian::big && sizeof(T) > 1) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  } else {
    return v;
  }
}

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  template <class T>
  void put(T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    v = to_le(v);
    out_.write(reinterpret_cast<const char*>(&v), sizeof v);
  }
  void put_key(EncodedKey key) {
    put(static_cast<std::uint64_t>(key));
    put(static_cast<std::uint64_t>(key >> 64));
  }
  template <class T>
  void put_array(std::span<const T> values) {
    if constexpr (std::endian::native == std::endian::little) {
      out_.write(reinterpret_cast<const char*>(values.data()),
                 static_cast<std::streamsize>(values.size_bytes()));
    } else {
      for (const T& v : values) put(v);
    }
  }
  void check() {
    if (!out_) throw IoError("write failed");
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void section(const char* name) { section_ = name; }

  template <class T>
  T get() {
    T v;
    read(&v, sizeof v);
    return to_le(v);
  }
  EncodedKey get_key() {
    const auto lo = get<std::uint64_t>();
    const auto hi = get<std::uint64_t>();
    return EncodedKey{hi} << 64 | lo;
  }
  template <class T>
  std::vector<T> get_array(std::uint64_t count) {
    if (count > (std::uint64_t{1} << 40) / sizeof(T)) fail("implausible element count");
    std::vector<T> v(count);
    read(v.data(), count * sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      for (auto& x : v) x = to_le(x);
    }
    return v;
  }
  [[noreturn]] void fail(const std::string& detail) const { throw CorruptIndexError(section_, detail); }

 private:
  void read(void* dst, std::size_t bytes) {
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(bytes));
    if (static_cast<std::size_t>(in_.gcount()) != bytes) fail("unexpected end of file");
  }

  std::istream& in_;
  const char* section_ = "header";
};

}  // namespace

void save_index(const SearchEngine& engine, std::ostream& out) {
  Writer w(out);
  const auto& fm = engine.fm();
  const auto& ip = engine.ipbwt();
  const Rmi* rmi = engine.rmi();

  out.write(kIndexMagic, 4);
  w.put(kIndexVersion);
  w.put(static_cast<std::uint16_t>(ip.k()));
  w.put(static_cast<std::uint64_t>(engine.size()));
  w.put(rmi ? kFlagRmi : std::uint32_t{0});
  w.put(FmIndex::kOccStride);
  w.put(rmi ? rmi->alpha_mid() : Rmi::kDefaultAlphaMid);
  w.put(rmi ? rmi->alpha_leaf() : Rmi::kDefaultAlphaLeaf);

  w.put_array(fm.sa());

  w.put(static_cast<std::uint64_t>(fm.sentinel_row()));
  for (const auto& blk : fm.blocks()) {
    for (auto c : blk.counts) w.put(c);
    w.put(blk.lo);
    w.put(blk.hi);
  }

  for (std::size_t i = 0; i < ip.size(); ++i) w.put_key(ip.key(i));

  w.put(static_cast<std::uint32_t>(ip.sentinel_rows().size()));
  for (const auto& s : ip.sentinel_rows()) {
    w.put(static_cast<std::uint64_t>(s.row));
    w.put(s.offset);
  }

  if (rmi) {
    w.put(static_cast<std::uint32_t>(rmi->layers().size()));
    for (const auto& layer : rmi->layers()) {
      w.put(static_cast<std::uint64_t>(layer.models.size()));
      w.put(layer.target_size);
      for (const auto& m : layer.models) {
        w.put(m.slope);
        w.put(m.intercept);
        w.put(m.avg_error);
      }
      for (EncodedKey b : layer.boundaries) w.put_key(b);
    }
  }
  w.check();
}

void save_index_file(const SearchEngine& engine, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  save_index(engine, out);
  out.close();
  if (!out) throw IoError("failed writing " + path);
}

SearchEngine load_index(std::istream& in) {
  Reader r(in);
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, kIndexMagic, 4) != 0) r.fail("bad magic");
  if (r.get<std::uint16_t>() != kIndexVersion) r.fail("unsupported version");
  const unsigned k = r.get<std::uint16_t>();
  const auto n = r.get<std::uint64_t>();
  const auto flags = r.get<std::uint32_t>();
  const auto stride = r.get<std::uint32_t>();
  const auto alpha_mid = r.get<double>();
  const auto alpha_leaf = r.get<double>();
  if (n < 2 || n >= (std::uint64_t{1} << 32) - 1) r.fail("n out of range");
  if (k < 1 || k > kMaxK || k >= n) r.fail("k out of range");
  if ((flags & ~kFlagRmi) != 0) r.fail("unknown flag bits");
  if (stride != FmIndex::kOccStride) r.fail("unsupported occurrence stride");

  r.section("suffix array");
  auto sa = r.get_array<std::uint32_t>(n);

  r.section("bwt/occ");
  const auto sentinel_row = r.get<std::uint64_t>();
  std::vector<FmIndex::OccBlock> blocks(n / stride + 1);
  for (auto& blk : blocks) {
    for (auto& c : blk.counts) c = r.get<std::uint32_t>();
    blk.lo = r.get<std::uint64_t>();
    blk.hi = r.get<std::uint64_t>();
  }

  r.section("ip-bwt keys");
  std::vector<EncodedKey> keys(n);
  for (auto& key : keys) {
    key = r.get_key();
    if ((key >> (2 * k + 32)) != 0) r.fail("key wider than 2K+32 bits");
  }

  r.section("sentinel table");
  const auto count = r.get<std::uint32_t>();
  if (count != k) r.fail("expected K entries");
  std::vector<IpBwt::SentinelRow> sentinel_rows(count);
  for (auto& s : sentinel_rows) {
    s.row = r.get<std::uint64_t>();
    s.offset = r.get<std::uint8_t>();
  }

  std::optional<Rmi> rmi;
  if (flags & kFlagRmi) {
    r.section("rmi");
    const auto layer_count = r.get<std::uint32_t>();
    if (layer_count == 0 || layer_count > 64) r.fail("implausible layer count");
    std::vector<RmiLayer> layers(layer_count);
    for (auto& layer : layers) {
      const auto models = r.get<std::uint64_t>();
      if (models == 0 || models > n) r.fail("implausible model count");
      layer.target_size = r.get<std::uint64_t>();
      layer.models.resize(models);
      for (auto& m : layer.models) {
        m.slope = r.get<double>();
        m.intercept = r.get<double>();
        m.avg_error = r.get<double>();
      }
      layer.boundaries.resize(models);
      for (auto& b : layer.boundaries) b = r.get_key();
    }
    if (layers.back().target_size != n) r.fail("leaf layer does not target the IP-BWT");
    rmi.emplace(std::move(layers), alpha_mid, alpha_leaf);
  }

  if (in.peek() != std::char_traits<char>::eof()) {
    r.section("trailer");
    r.fail("trailing bytes after last section");
  }

  FmIndex fm(std::move(sa), std::move(blocks), sentinel_row);
  IpBwt ip(k, std::move(keys), std::move(sentinel_rows));
  Reference ref = SearchEngine::reconstruct_reference(fm);
  return SearchEngine(std::move(ref), std::move(fm), std::move(ip), std::move(rmi));
}

SearchEngine load_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return load_index(in);
}

}  // namespace lisa
