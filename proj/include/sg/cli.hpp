#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sg/partition.hpp"

namespace sg {

enum class Command { avg, table, mc_verify, pfaffian, expand, density };
enum class Method { closed, pfaffian, both };
enum class OutputFormat { json, csv, text };

// Everything a single invocation needs, filled from flags by run_cli.
struct RunConfig {
  Command command = Command::avg;
  std::optional<Partition> partition;
  unsigned dim = 0;
  Method method = Method::both;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  OutputFormat output = OutputFormat::text;
  std::optional<std::string> output_path;

  std::size_t embed_dim = 0;  // avg: Pfaffian embedding override, 0 = auto

  unsigned max_weight = 0;  // table sweep bounds
  unsigned max_length = 0;  // 0 = dim
  unsigned max_part = 0;    // 0 = max_weight

  int threads = 0;           // sampling commands
  bool serial = false;
  std::string stats_filter;  // mc-verify: substring filter on statistic ids
  bool inject_error = false; // mc-verify: self-test, must exit 3

  unsigned power_sum = 0;   // expand --power-sum
  unsigned charpoly_n = 0;  // expand --charpoly
  std::string points;       // expand: comma-separated evaluation points

  std::size_t epsilon_dim = 0;          // pfaffian --epsilon
  std::size_t epsilon_inverse_dim = 0;  // pfaffian --epsilon-inverse
  std::size_t matrix_a_dim = 0;         // pfaffian --matrix-a
  std::vector<std::size_t> rows;        // pfaffian: retained 1-based indices

  unsigned bins_x = 8;  // density grid
  unsigned bins_y = 4;
  double band = 0.1;
  double extent = 0.0;  // 0 = sqrt(dim) + 1.5
};

// Exit codes are a stable contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRouteDisagreement = 2;
inline constexpr int kExitStatisticalFailure = 3;

// Parses args (no program name) and runs one subcommand, writing reports to
// `out` (or the --out file) and diagnostics to `err`.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace sg
