#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lisa {

/// Nucleotide code; numeric order follows the lexicographic order A < C < G < T.
enum class Base : std::uint8_t { A = 0, C = 1, G = 2, T = 3 };

/// Ordering rank of a text symbol with the sentinel included: $ = 0, A..T = 1..4.
using Symbol = std::uint8_t;
inline constexpr Symbol kSentinelSymbol = 0;
inline constexpr int kAlphabetSize = 5;

constexpr Symbol to_symbol(Base b) noexcept {
  return static_cast<Symbol>(static_cast<std::uint8_t>(b) + 1);
}
constexpr std::uint8_t code(Base b) noexcept { return static_cast<std::uint8_t>(b); }

/// Throws InvalidCharacterError for anything outside {A,C,G,T,a,c,g,t}.
Base encode_base(char c, std::size_t offset = 0);
/// Non-throwing variant; returns false for invalid characters.
bool try_encode_base(char c, Base& out) noexcept;
char decode_base(Base b) noexcept;
char symbol_char(Symbol s) noexcept;

std::vector<Base> encode_sequence(std::string_view s);
std::string decode_sequence(std::span<const Base> bases);

/// A sentinel-terminated DNA text. The sentinel is implicit at position size()-1.
class Reference {
 public:
  Reference() = default;
  Reference(std::string name, std::vector<Base> bases);

  const std::string& name() const noexcept { return name_; }
  /// Length including the sentinel.
  std::size_t size() const noexcept { return bases_.size() + 1; }
  std::span<const Base> bases() const noexcept { return bases_; }
  Symbol symbol(std::size_t i) const noexcept {
    return i + 1 == size() ? kSentinelSymbol : to_symbol(bases_[i]);
  }
  std::string to_string() const;  // bases followed by '$'

  bool operator==(const Reference&) const = default;

 private:
  std::string name_;
  std::vector<Base> bases_;
};

/// Reads the sequence of a FASTA stream. Records after the first are
/// concatenated onto it in file order.
Reference load_fasta(std::istream& in);
Reference load_fasta_file(const std::string& path);
void write_fasta(std::ostream& out, const Reference& ref, std::size_t line_width = 60);

struct Query {
  std::uint64_t id = 0;
  std::vector<Base> bases;
  std::string error;  // non-empty marks the query invalid

  bool valid() const noexcept { return error.empty(); }
  std::size_t size() const noexcept { return bases.size(); }
};

/// One query per line; LF or CRLF. Blank lines are skipped and do not consume
/// an id. Lines with invalid characters yield queries flagged invalid.
std::vector<Query> parse_queries(std::istream& in);
std::vector<Query> parse_queries_file(const std::string& path);

/// `count` uniformly placed substrings of length `length`, deterministic in `seed`.
std::vector<Query> generate_queries(const Reference& ref, std::size_t length, std::size_t count,
                                    std::uint64_t seed);

void write_queries(std::ostream& out, std::span<const Query> queries);

}  // namespace lisa
