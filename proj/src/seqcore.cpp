#include "lisa/seqcore.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "lisa/error.hpp"

namespace lisa {

namespace {

std::string describe_char(char c) {
  std::ostringstream os;
  if (c >= 0x21 && c <= 0x7e) {
    os << "'" << c << "'";
  } else {
    os << "0x" << std::hex << static_cast<int>(static_cast<unsigned char>(c));
  }
  return os.str();
}

std::string invalid_message(char c, std::size_t offset, std::size_t line, std::size_t column) {
  std::ostringstream os;
  os << "invalid character " << describe_char(c);
  if (line != 0) {
    os << " at line " << line << ", column " << column;
  } else {
    os << " at offset " << offset;
  }
  return os.str();
}

void strip_line_end(std::string& line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
    line.pop_back();
  }
}

}  // namespace

InvalidCharacterError::InvalidCharacterError(char c, std::size_t offset, std::size_t line,
                                             std::size_t column)
    : Error(invalid_message(c, offset, line, column)),
      character_(c),
      offset_(offset),
      line_(line),
      column_(column) {}

CorruptIndexError::CorruptIndexError(std::string section, const std::string& detail)
    : Error("corrupt index (" + section + "): " + detail), section_(std::move(section)) {}

bool try_encode_base(char c, Base& out) noexcept {
  switch (c) {
    case 'A': case 'a': out = Base::A; return true;
    case 'C': case 'c': out = Base::C; return true;
    case 'G': case 'g': out = Base::G; return true;
    case 'T': case 't': out = Base::T; return true;
    default: return false;
  }
}

Base encode_base(char c, std::size_t offset) {
  Base b;
  if (!try_encode_base(c, b)) throw InvalidCharacterError(c, offset);
  return b;
}

char decode_base(Base b) noexcept { return "ACGT"[code(b)]; }

char symbol_char(Symbol s) noexcept { return "$ACGT"[s < kAlphabetSize ? s : 0]; }

std::vector<Base> encode_sequence(std::string_view s) {
  std::vector<Base> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(encode_base(s[i], i));
  return out;
}

std::string decode_sequence(std::span<const Base> bases) {
  std::string s;
  s.reserve(bases.size());
  for (Base b : bases) s.push_back(decode_base(b));
  return s;
}

Reference::Reference(std::string name, std::vector<Base> bases)
    : name_(std::move(name)), bases_(std::move(bases)) {
  if (bases_.empty()) throw EmptyInputError("reference has no bases");
}

std::string Reference::to_string() const { return decode_sequence(bases_) + '$'; }

Reference load_fasta(std::istream& in) {
  std::string name;
  bool seen_header = false;
  std::vector<Base> bases;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_line_end(line);
    if (line.empty()) continue;
    if (line[0] == '>') {
      if (!seen_header) {
        name = line.substr(1);
        auto ws = name.find_first_of(" \t");
        if (ws != std::string::npos) name.resize(ws);
        seen_header = true;
      }
      continue;
    }
    if (line[0] == ';') continue;
    for (std::size_t col = 0; col < line.size(); ++col) {
      Base b;
      if (!try_encode_base(line[col], b)) {
        throw InvalidCharacterError(line[col], bases.size(), line_no, col + 1);
      }
      bases.push_back(b);
    }
  }
  if (in.bad()) throw IoError("read error while loading FASTA");
  if (bases.empty()) throw EmptyInputError("FASTA input contains no sequence data");
  return Reference(std::move(name), std::move(bases));
}

Reference load_fasta_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return load_fasta(in);
}

void write_fasta(std::ostream& out, const Reference& ref, std::size_t line_width) {
  out << '>' << (ref.name().empty() ? "reference" : ref.name()) << '\n';
  auto bases = ref.bases();
  for (std::size_t i = 0; i < bases.size(); i += line_width) {
    out << decode_sequence(bases.subspan(i, std::min(line_width, bases.size() - i))) << '\n';
  }
}

std::vector<Query> parse_queries(std::istream& in) {
  std::vector<Query> out;
  std::string line;
  while (std::getline(in, line)) {
    strip_line_end(line);
    if (line.empty()) continue;
    Query q;
    q.id = out.size();
    q.bases.reserve(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
      Base b;
      if (!try_encode_base(line[i], b)) {
        q.error = invalid_message(line[i], i, 0, 0);
        q.bases.clear();
        break;
      }
      q.bases.push_back(b);
    }
    out.push_back(std::move(q));
  }
  if (in.bad()) throw IoError("read error while loading queries");
  return out;
}

std::vector<Query> parse_queries_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_queries(in);
}

std::vector<Query> generate_queries(const Reference& ref, std::size_t length, std::size_t count,
                                    std::uint64_t seed) {
  const std::size_t text = ref.size() - 1;
  if (length < 1 || length > text) {
    throw ParameterError("query length " + std::to_string(length) + " outside [1, " +
                         std::to_string(text) + "]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> start_dist(0, text - length);
  auto bases = ref.bases();
  std::vector<Query> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto start = start_dist(rng);
    out[i].id = i;
    out[i].bases.assign(bases.begin() + start, bases.begin() + start + length);
  }
  return out;
}

void write_queries(std::ostream& out, std::span<const Query> queries) {
  for (const auto& q : queries) out << decode_sequence(q.bases) << '\n';
}

}  // namespace lisa
