#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lisa/search.hpp"

namespace lisa::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIoError = 2,
  kInvalidInput = 3,  // bad FASTA or corrupt index
  kBadParameter = 4,
  kMixedLengths = 5,
};

enum class QueryMode { rmi, binary, fm };

QueryMode parse_query_mode(const std::string& name);

/// fm mode searches query by query and accepts mixed lengths; the other modes
/// go through SearchView::batch_search.
std::vector<std::optional<SaInterval>> run_queries(const SearchEngine& engine, std::span<const Query> queries,
                                                   QueryMode mode);

/// TSV: id, low, high, match count[, comma-separated positions or "-"].
/// Invalid queries: id, "invalid", detail.
void write_results(std::ostream& out, std::span<const Query> queries,
                   std::span<const std::optional<SaInterval>> results, const FmIndex* locate);

/// Entry point behind the `lisa` binary; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lisa::cli
