#pragma once

// Brute-force reference implementations used only by tests. Everything here
// works on the explicit BW-matrix of small texts; '$' sorts below 'A' in ASCII,
// so std::string comparison gives the $ < A < C < G < T order directly.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lisa/seqcore.hpp"

namespace oracle {

inline std::string text_of(const lisa::Reference& ref) { return ref.to_string(); }

inline std::string rotation(const std::string& t, std::size_t start) {
  return t.substr(start) + t.substr(0, start);
}

inline std::vector<std::uint32_t> suffix_array(const std::string& t) {
  std::vector<std::uint32_t> sa(t.size());
  for (std::size_t i = 0; i < sa.size(); ++i) sa[i] = static_cast<std::uint32_t>(i);
  std::sort(sa.begin(), sa.end(), [&](auto a, auto b) { return rotation(t, a) < rotation(t, b); });
  return sa;
}

struct Matrix {
  std::string text;
  std::vector<std::uint32_t> sa;
  std::vector<std::string> rows;
};

inline Matrix bw_matrix(const std::string& t) {
  Matrix m{t, suffix_array(t), {}};
  for (auto s : m.sa) m.rows.push_back(rotation(t, s));
  return m;
}

inline std::string bwt(const Matrix& m) {
  std::string b;
  for (const auto& r : m.rows) b.push_back(r.back());
  return b;
}

inline std::uint64_t occ(const std::string& bwt, char x, std::int64_t i) {
  std::uint64_t c = 0;
  for (std::int64_t j = 0; j <= i; ++j) c += bwt[static_cast<std::size_t>(j)] == x;
  return c;
}

/// Rows prefixed by q, by bisection over the explicit sorted rows.
inline std::pair<std::uint64_t, std::uint64_t> interval(const Matrix& m, const std::string& q) {
  auto lo = std::lower_bound(m.rows.begin(), m.rows.end(), q);
  auto hi = std::partition_point(lo, m.rows.end(), [&](const std::string& r) { return r.compare(0, q.size(), q) == 0; });
  return {static_cast<std::uint64_t>(lo - m.rows.begin()), static_cast<std::uint64_t>(hi - m.rows.begin())};
}

/// Start positions of q in the text (sentinel excluded), ascending.
inline std::vector<std::uint64_t> scan(const std::string& text_with_sentinel, const std::string& q) {
  std::vector<std::uint64_t> out;
  const std::string t = text_with_sentinel.substr(0, text_with_sentinel.size() - 1);
  if (q.size() > t.size()) return out;
  for (std::size_t i = 0; i + q.size() <= t.size(); ++i) {
    if (t.compare(i, q.size(), q) == 0) out.push_back(i);
  }
  return out;
}

/// IP-BWT entry of row i: first k characters and the row of the rotation with
/// the first k and last n-k characters swapped, found by explicit lookup.
struct Entry {
  std::string kmer;
  std::uint64_t loc;
};

inline std::vector<Entry> ipbwt(const Matrix& m, unsigned k) {
  std::vector<Entry> out;
  for (const auto& r : m.rows) {
    const std::string swapped = r.substr(k) + r.substr(0, k);
    const auto it = std::lower_bound(m.rows.begin(), m.rows.end(), swapped);
    out.push_back({r.substr(0, k), static_cast<std::uint64_t>(it - m.rows.begin())});
  }
  return out;
}

/// f_K for a plain k-mer s: rows smaller than the rotation s + row i (cut to
/// length n). Row n is treated as larger than every row.
inline std::uint64_t f_k(const Matrix& m, const std::string& s, std::uint64_t i) {
  const std::string target = i < m.rows.size() ? (s + m.rows[i]).substr(0, m.rows.size()) : s + "~";
  return static_cast<std::uint64_t>(std::lower_bound(m.rows.begin(), m.rows.end(), target) - m.rows.begin());
}

/// Lower bound of (s, i) among explicit IP-BWT entries in (k-mer, loc) order.
inline std::uint64_t entry_lower_bound(const std::vector<Entry>& entries, const std::string& s, std::uint64_t i) {
  std::uint64_t count = 0;
  for (const auto& e : entries) count += e.kmer < s || (e.kmer == s && e.loc < i);
  return count;
}

inline std::string random_dna(std::mt19937_64& rng, std::size_t len, unsigned alphabet = 4) {
  std::uniform_int_distribution<unsigned> d(0, alphabet - 1);
  std::string s(len, 'A');
  for (auto& c : s) c = "ACGT"[d(rng)];
  return s;
}

inline lisa::Reference reference(const std::string& bases, std::string name = "r") {
  return lisa::Reference(std::move(name), lisa::encode_sequence(bases));
}

}  // namespace oracle
