#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lisa/search.hpp"

namespace lisa {

enum class BenchMode { fm, binary, rmi };

const char* to_string(BenchMode mode) noexcept;
BenchMode parse_bench_mode(const std::string& name);

struct BenchConfig {
  std::vector<std::size_t> lengths{21, 32, 42, 200};
  /// One set of rows per batch size; more than one value gives a sweep.
  std::vector<std::size_t> batch_sizes{100000};
  /// Queries timed per row; 0 means the largest batch size. Smaller batches
  /// are run back to back until this many queries are done.
  std::size_t queries = 0;
  std::uint64_t seed = 1;
  std::vector<BenchMode> modes{BenchMode::fm, BenchMode::binary, BenchMode::rmi};
};

struct BenchRow {
  BenchMode mode = BenchMode::fm;
  std::size_t length = 0;
  std::size_t batch_size = 0;
  std::size_t queries = 0;
  double total_seconds = 0.0;
  double ns_per_query = 0.0;
  double queries_per_second = 0.0;
  double speedup_vs_fm = 0.0;  // 0 when no fm row was measured for this length and batch size
  std::uint64_t matches = 0;   // sum of interval sizes, keeps the work observable
};

struct BenchReport {
  std::vector<BenchRow> rows;
  IndexSizes sizes;
};

/// Times one mode over `queries`, split into consecutive batches of `batch_size`.
/// Returns elapsed seconds; `matches` receives the sum of interval sizes.
double time_mode(const SearchEngine& engine, BenchMode mode, std::span<const Query> queries,
                 std::size_t batch_size, std::uint64_t& matches);

/// Query generation happens before timing starts; each row times search only.
BenchReport run_bench(const SearchEngine& engine, const BenchConfig& config);

void write_size_report(std::ostream& out, const IndexSizes& sizes);
void write_bench_text(std::ostream& out, const BenchReport& report);
/// key=value lines, one per field, rows prefixed "row.<i>."
void write_bench_kv(std::ostream& out, const BenchReport& report);

}  // namespace lisa
