// Copyright 2026 The nppt-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "nppt/states.hpp"
#include "nppt/witness.hpp"

namespace nppt::cli {

// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitBadArguments = 2,
  kExitIo = 3,
  kExitSamplerExhausted = 4,
  kExitPlotInput = 5,
  kExitFlagged = 10,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PlotInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlphaGrid {
  double start = 0.1;
  double stop = 0.9;
  double step = 0.1;
  std::vector<double> explicit_values;  // overrides the grid when nonempty

  // start + k*step for k = 0, 1, ... while within stop (1e-9 relative slack
  // on the cell count); empty when start > stop.
  std::vector<double> values() const;
};

enum class Mode { Classify, WernerScan, FamilyScan, Compare };

struct ScanConfig {
  Mode mode = Mode::Compare;
  int d = 3;
  std::vector<int> copies{1};
  double alpha = 0.4;
  AlphaGrid grid;
  int samples = 100;
  FamilyConstraints constraints;
  SeesawConfig seesaw;
  std::string out;

  // Throws std::invalid_argument when a field is outside module preconditions.
  void validate() const;
};

inline constexpr const char* kWernerScanHeader =
    "d,n,alpha,seed,restarts,seesaw_min,extremal_min,analytic_ref,gap,flag,converged_restarts,"
    "wall_ms";

// One line, e.g. "NPPT_ONE_COPY_UNDISTILLABLE (1/d=0.3333, 1/2=0.5)".
std::string classify_line(const WernerParams& p);

// Full CSV text (header + rows, LF endings).
std::string werner_scan_csv(const ScanConfig& cfg);

// Pretty-printed JSON text. Throws SamplerExhausted.
std::string family_scan_json(const ScanConfig& cfg);

struct CompareOutput {
  std::string json;
  ComparisonReport report;
};
CompareOutput compare_json(const ScanConfig& cfg);

// Command entry points: write files, print a summary to `log`, return the
// exit code. Exceptions propagate to run().
int cmd_classify(int d, double alpha, std::ostream& log);
int cmd_werner_scan(const ScanConfig& cfg, std::ostream& log);
int cmd_family_scan(const ScanConfig& cfg, std::ostream& log);
int cmd_compare(const ScanConfig& cfg, std::ostream& log);
int cmd_plot(const std::string& csv_path, const std::string& x_column,
             const std::vector<std::string>& y_columns, const std::string& out_path,
             std::ostream& log);

// Minimal SVG 1.1 line plot of CSV columns. Throws PlotInputError for
// missing columns or a table without numeric rows.
std::string render_svg_plot(const std::string& csv_text, const std::string& x_column,
                            const std::vector<std::string>& y_columns);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// Parse argv, dispatch a subcommand, and map exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nppt::cli
