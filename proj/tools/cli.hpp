#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hmp/records.hpp"

namespace hmp::cli {

enum class Format { Csv, Json };

/// Parsed options for one run. Fields unused by a command keep their defaults.
struct ExperimentConfig {
  std::string command;
  long n = 5;
  long n_max = 20;
  std::vector<long> n_values{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  std::vector<double> deltas{1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
  int realizations = 20;
  std::uint64_t seed = 42;
  long precision_bits = 256;
  std::string out;
  Format format = Format::Csv;
  bool plot_data = false;
  std::string plot_dir = ".";
  std::string meta;

  bool inverse = false;          // hilbert: print H^{-1}
  std::vector<long> norms;       // hilbert: sizes for lambda_max rows instead of entries
  std::string poly = "3t^2-1";   // reconstruct
  std::string function;          // reconstruct/laplace: named test function
  std::string data = "one";      // hausdorff: one | t | delta
  long N_max_pv = 100000;        // pointvalue
  double mu = 0.5;               // counterexample
  int k = 1;
  double target = 1e6;
  int q_max = 60;
  std::vector<long> j_list{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  double tol = 1e-8;
  std::string sigma = "r2";      // eit: one | r2 | r
  std::vector<long> modes{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
};

struct RunOutput {
  Table table;
  std::vector<SeriesSpec> series;
};

/// "a..b" (inclusive) or a comma list.
std::vector<long> parse_index_range(const std::string& text);

/// "1e-2..1e-7" gives one point per decade; otherwise a comma list.
std::vector<double> parse_delta_grid(const std::string& text);

/// Runs the command without touching the file system.
RunOutput execute(const ExperimentConfig& cfg);

/// Flag parsing, execution, table output, sidecar metadata and plot data.
/// Exit status 0 on success, 1 for an invalid configuration, 2 for numeric failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hmp::cli
