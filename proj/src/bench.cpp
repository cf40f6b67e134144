#include "lisa/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>

#include "lisa/error.hpp"

namespace lisa {

const char* to_string(BenchMode mode) noexcept {
  switch (mode) {
    case BenchMode::fm: return "fm";
    case BenchMode::binary: return "binary";
    default: return "rmi";
  }
}

BenchMode parse_bench_mode(const std::string& name) {
  if (name == "fm") return BenchMode::fm;
  if (name == "binary") return BenchMode::binary;
  if (name == "rmi") return BenchMode::rmi;
  throw ParameterError("unknown mode '" + name + "' (expected fm, binary or rmi)");
}

double time_mode(const SearchEngine& engine, BenchMode mode, std::span<const Query> queries,
                 std::size_t batch_size, std::uint64_t& matches) {
  if (batch_size == 0) throw ParameterError("batch size must be positive");
  matches = 0;
  const auto start = std::chrono::steady_clock::now();
  if (mode == BenchMode::fm) {
    for (const auto& q : queries) matches += engine.fm().backward_search(q.bases).size();
  } else {
    const SearchView view = engine.view(mode == BenchMode::rmi ? LookupMode::rmi : LookupMode::binary);
    for (std::size_t i = 0; i < queries.size(); i += batch_size) {
      const auto batch = queries.subspan(i, std::min(batch_size, queries.size() - i));
      for (const auto& r : view.batch_search(batch)) matches += r ? r->size() : 0;
    }
  }
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

BenchReport run_bench(const SearchEngine& engine, const BenchConfig& config) {
  if (config.batch_sizes.empty()) throw ParameterError("no batch sizes given");
  BenchReport report;
  report.sizes = engine.sizes();
  const std::size_t per_row =
      config.queries ? config.queries : *std::max_element(config.batch_sizes.begin(), config.batch_sizes.end());
  for (std::size_t length : config.lengths) {
    const auto queries = generate_queries(engine.reference(), length, per_row, config.seed);
    for (std::size_t batch : config.batch_sizes) {
      const std::size_t first = report.rows.size();
      for (BenchMode mode : config.modes) {
        BenchRow row;
        row.mode = mode;
        row.length = length;
        row.batch_size = batch;
        row.queries = queries.size();
        row.total_seconds = time_mode(engine, mode, queries, batch, row.matches);
        row.ns_per_query = row.queries ? row.total_seconds * 1e9 / static_cast<double>(row.queries) : 0.0;
        row.queries_per_second = row.total_seconds > 0 ? static_cast<double>(row.queries) / row.total_seconds : 0.0;
        report.rows.push_back(row);
      }
      const auto fm_row = std::find_if(report.rows.begin() + static_cast<std::ptrdiff_t>(first), report.rows.end(),
                                       [](const BenchRow& r) { return r.mode == BenchMode::fm; });
      if (fm_row != report.rows.end()) {
        const double fm_ns = fm_row->ns_per_query;
        for (std::size_t i = first; i < report.rows.size(); ++i) {
          auto& row = report.rows[i];
          row.speedup_vs_fm = row.ns_per_query > 0 ? fm_ns / row.ns_per_query : 0.0;
        }
      }
    }
  }
  return report;
}

void write_size_report(std::ostream& out, const IndexSizes& s) {
  const double n = static_cast<double>(s.n);
  auto line = [&](const char* name, double bytes) {
    out << "  " << std::left << std::setw(22) << name << std::right << std::setw(14)
        << static_cast<std::uint64_t>(bytes) << " bytes  " << std::fixed << std::setprecision(3)
        << bytes / n << " n\n";
  };
  out << "index sizes (n = " << s.n << ", K = " << s.k << ")\n";
  line("suffix array", static_cast<double>(s.suffix_array));
  line("bwt + occ", static_cast<double>(s.bwt_occ));
  line("ip-bwt", static_cast<double>(s.ipbwt));
  line("sentinel table", static_cast<double>(s.sentinel_table));
  line("rmi", static_cast<double>(s.rmi));
  line("total", static_cast<double>(s.total()));
  out << "space model\n";
  line("ip-bwt (0.25K+4)n", s.model_ipbwt());
  line("lisa (8.5+0.25K)n", s.model_lisa());
  line("fm-index 6n", s.model_fm());
  out << std::defaultfloat;
}

void write_bench_text(std::ostream& out, const BenchReport& report) {
  write_size_report(out, report.sizes);
  out << std::left << std::setw(8) << "mode" << std::right << std::setw(6) << "|Q|" << std::setw(10) << "batch"
      << std::setw(10) << "queries" << std::setw(12) << "total_s" << std::setw(12) << "ns/query" << std::setw(14)
      << "queries/s" << std::setw(10) << "speedup" << '\n';
  for (const auto& r : report.rows) {
    out << std::left << std::setw(8) << to_string(r.mode) << std::right << std::setw(6) << r.length << std::setw(10)
        << r.batch_size << std::setw(10) << r.queries << std::fixed << std::setprecision(4) << std::setw(12)
        << r.total_seconds << std::setprecision(1) << std::setw(12) << r.ns_per_query << std::setprecision(0)
        << std::setw(14) << r.queries_per_second << std::setprecision(2) << std::setw(9) << r.speedup_vs_fm << "x"
        << '\n';
  }
  out << std::defaultfloat;
}

void write_bench_kv(std::ostream& out, const BenchReport& report) {
  const auto& s = report.sizes;
  out << std::setprecision(17);
  out << "index.n=" << s.n << "\nindex.k=" << s.k << "\nindex.bytes.suffix_array=" << s.suffix_array
      << "\nindex.bytes.bwt_occ=" << s.bwt_occ << "\nindex.bytes.ipbwt=" << s.ipbwt
      << "\nindex.bytes.sentinel_table=" << s.sentinel_table << "\nindex.bytes.rmi=" << s.rmi
      << "\nindex.bytes.total=" << s.total() << "\nindex.model.ipbwt=" << s.model_ipbwt()
      << "\nindex.model.lisa=" << s.model_lisa() << "\nindex.model.fm=" << s.model_fm() << '\n';
  out << "rows=" << report.rows.size() << '\n';
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    const std::string p = "row." + std::to_string(i) + ".";
    out << p << "mode=" << to_string(r.mode) << '\n'
        << p << "length=" << r.length << '\n'
        << p << "batch_size=" << r.batch_size << '\n'
        << p << "queries=" << r.queries << '\n'
        << p << "total_seconds=" << r.total_seconds << '\n'
        << p << "ns_per_query=" << r.ns_per_query << '\n'
        << p << "queries_per_second=" << r.queries_per_second << '\n'
        << p << "speedup_vs_fm=" << r.speedup_vs_fm << '\n'
        << p << "matches=" << r.matches << '\n';
  }
}

}  // namespace lisa
