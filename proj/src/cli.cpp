#include "lisa/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "lisa/bench.hpp"
#include "lisa/error.hpp"
#include "lisa/index_io.hpp"

namespace lisa::cli {

namespace {

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ParameterError(std::string("bad ") + what + " value '" + item + "'");
    out.push_back(static_cast<T>(v));
  }
  if (out.empty()) throw ParameterError(std::string("empty ") + what + " list");
  return out;
}

struct BuildArgs {
  std::string fasta, out;
  unsigned k = 21;
  double alpha_mid = Rmi::kDefaultAlphaMid, alpha_leaf = Rmi::kDefaultAlphaLeaf;
  bool no_rmi = false;
};

struct QueryArgs {
  std::string index, queries, out, mode = "rmi";
  bool locate = false;
};

struct BenchArgs {
  std::string index, out, lengths = "21,32,42,200", batch_sizes = "100000", modes = "fm,binary,rmi";
  std::size_t queries = 0;
  std::uint64_t seed = 1;
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
  Reference ref = load_fasta_file(a.fasta);
  if (a.k < 1 || a.k > kMaxK) throw ParameterError("--k must be in [1, " + std::to_string(kMaxK) + "]");
  BuildOptions opt{a.k, a.alpha_mid, a.alpha_leaf, !a.no_rmi};
  const SearchEngine engine = SearchEngine::build(std::move(ref), opt);
  save_index_file(engine, a.out);
  write_size_report(out, engine.sizes());
  if (const Rmi* rmi = engine.rmi()) {
    out << "rmi layers: " << rmi->layers().size() << " (models per layer:";
    for (const auto& l : rmi->layers()) out << ' ' << l.models.size();
    out << ")\n";
  }
  return kOk;
}

int cmd_query(const QueryArgs& a, std::ostream& out) {
  const QueryMode mode = parse_query_mode(a.mode);
  const SearchEngine engine = load_index_file(a.index);
  const auto queries = parse_queries_file(a.queries);
  const auto results = run_queries(engine, queries, mode);
  const FmIndex* locate = a.locate ? &engine.fm() : nullptr;
  if (a.out.empty()) {
    write_results(out, queries, results, locate);
  } else {
    std::ofstream file(a.out, std::ios::trunc);
    if (!file) throw IoError("cannot open " + a.out + " for writing");
    write_results(file, queries, results, locate);
    if (!file) throw IoError("failed writing " + a.out);
  }
  return kOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchConfig config;
  config.lengths = parse_list<std::size_t>(a.lengths, "length");
  config.batch_sizes = parse_list<std::size_t>(a.batch_sizes, "batch size");
  config.queries = a.queries;
  config.seed = a.seed;
  config.modes.clear();
  std::stringstream ss(a.modes);
  for (std::string m; std::getline(ss, m, ',');) {
    if (!m.empty()) config.modes.push_back(parse_bench_mode(m));
  }
  if (config.modes.empty()) throw ParameterError("no modes given");
  for (auto b : config.batch_sizes) {
    if (b == 0) throw ParameterError("batch size must be positive");
  }
  const SearchEngine engine = load_index_file(a.index);
  const BenchReport report = run_bench(engine, config);
  write_bench_text(out, report);
  if (!a.out.empty()) {
    std::ofstream file(a.out, std::ios::trunc);
    if (!file) throw IoError("cannot open " + a.out + " for writing");
    write_bench_kv(file, report);
    if (!file) throw IoError("failed writing " + a.out);
  }
  return kOk;
}

}  // namespace

QueryMode parse_query_mode(const std::string& name) {
  if (name == "rmi") return QueryMode::rmi;
  if (name == "binary") return QueryMode::binary;
  if (name == "fm") return QueryMode::fm;
  throw ParameterError("unknown mode '" + name + "' (expected rmi, binary or fm)");
}

std::vector<std::optional<SaInterval>> run_queries(const SearchEngine& engine, std::span<const Query> queries,
                                                   QueryMode mode) {
  if (mode == QueryMode::fm) {
    std::vector<std::optional<SaInterval>> out(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
      if (queries[i].valid()) out[i] = engine.fm().backward_search(queries[i].bases);
    }
    return out;
  }
  return engine.view(mode == QueryMode::rmi ? LookupMode::rmi : LookupMode::binary).batch_search(queries);
}

void write_results(std::ostream& out, std::span<const Query> queries,
                   std::span<const std::optional<SaInterval>> results, const FmIndex* locate) {
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto& q = queries[i];
    out << q.id;
    if (!q.valid() || !results[i]) {
      out << "\tinvalid\t" << (q.valid() ? "no result" : q.error) << '\n';
      continue;
    }
    const SaInterval iv = *results[i];
    out << '\t' << iv.low << '\t' << iv.high << '\t' << iv.size();
    if (locate) {
      out << '\t';
      const auto positions = locate->locate(iv);
      if (positions.empty()) out << '-';
      for (std::size_t p = 0; p < positions.size(); ++p) out << (p ? "," : "") << positions[p];
    }
    out << '\n';
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact DNA search with a learned index over an index-paired BWT"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Build an index from a FASTA reference");
  b->add_option("fasta", build.fasta, "Reference FASTA")->required();
  b->add_option("--out,-o", build.out, "Index file to write")->required();
  b->add_option("--k", build.k, "Chunk length K");
  b->add_option("--alpha-mid", build.alpha_mid, "Average-error bound for middle RMI layers");
  b->add_option("--alpha-leaf", build.alpha_leaf, "Average-error bound for leaf models");
  b->add_flag("--no-rmi", build.no_rmi, "Skip the RMI (binary-search lookups only)");

  QueryArgs query;
  auto* q = app.add_subcommand("query", "Search a query file against an index");
  q->add_option("index", query.index, "Index file")->required();
  q->add_option("queries", query.queries, "One query per line")->required();
  q->add_option("--mode", query.mode, "rmi, binary or fm");
  q->add_option("--out,-o", query.out, "Results TSV (default stdout)");
  q->add_flag("--locate", query.locate, "Append matching reference positions");

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "Time LISA against the FM-index baseline");
  be->add_option("index", bench.index, "Index file")->required();
  be->add_option("--lengths", bench.lengths, "Comma-separated query lengths");
  be->add_option("--batch-size", bench.batch_sizes, "Comma-separated batch sizes (several give a sweep)");
  be->add_option("--queries", bench.queries, "Queries timed per row (default: largest batch size)");
  be->add_option("--seed", bench.seed, "Query generation seed");
  be->add_option("--modes", bench.modes, "Comma-separated subset of fm,binary,rmi");
  be->add_option("--out,-o", bench.out, "Machine-readable key=value report");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ConversionError& e) {
    app.exit(e, out, err);
    return kBadParameter;
  } catch (const CLI::ValidationError& e) {
    app.exit(e, out, err);
    return kBadParameter;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (b->parsed()) return cmd_build(build, out);
    if (q->parsed()) return cmd_query(query, out);
    return cmd_bench(bench, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const InvalidCharacterError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const EmptyInputError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const CorruptIndexError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const MixedLengthError& e) {
    err << "error: " << e.what() << '\n';
    return kMixedLengths;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kBadParameter;
  } catch (const ModeUnavailableError& e) {
    err << "error: " << e.what() << '\n';
    return kBadParameter;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kIoError;
  }
}

}  // namespace lisa::cli
