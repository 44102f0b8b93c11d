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

#include "nppt/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nppt/serialize.hpp"
#include "random_util.hpp"

namespace nppt::cli {

namespace {

using Clock = std::chrono::steady_clock;

long long elapsed_ms(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - since).count();
}

std::string format_short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

nlohmann::json constraint_list(const FamilyConstraints& c) {
  nlohmann::json out = nlohmann::json::array();
  if (c.valid) out.push_back("valid");
  if (c.nppt) out.push_back("nppt");
  if (c.two_positive) out.push_back("two_positive");
  return out;
}

FamilyConstraints parse_constraints(const std::vector<std::string>& names, bool zero_z) {
  FamilyConstraints c;
  for (const auto& name : names) {
    if (name == "valid") {
      c.valid = true;
    } else if (name == "nppt") {
      c.nppt = true;
    } else if (name == "two_positive") {
      c.two_positive = true;
    } else {
      throw std::invalid_argument("unknown constraint '" + name +
                                  "' (expected valid, nppt, two_positive)");
    }
  }
  c.zero_coherence = zero_z;
  return c;
}

int threads_from_env() {
  const char* raw = std::getenv("NPPT_LAB_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 0 || v > 4096) {
    throw std::invalid_argument("NPPT_LAB_THREADS must be a nonnegative integer");
  }
  return static_cast<int>(v);
}

}  // namespace

std::vector<double> AlphaGrid::values() const {
  if (!explicit_values.empty()) return explicit_values;
  if (!(step > 0.0)) throw std::invalid_argument("alpha grid step must be > 0");
  std::vector<double> out;
  if (start > stop) return out;
  const double cells = (stop - start) / step;
  const auto count = static_cast<long long>(std::floor(cells * (1.0 + 1e-9) + 1e-9)) + 1;
  for (long long k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

void ScanConfig::validate() const {
  if (d < 2) throw std::invalid_argument("--d must be >= 2");
  if (copies.empty()) throw std::invalid_argument("--n needs at least one copy count");
  for (int n : copies) {
    if (n < 1) throw std::invalid_argument("--n must be >= 1");
    product_dim(canonical_dims(d, n));
  }
  if (mode == Mode::Compare && copies.size() != 1) {
    throw std::invalid_argument("compare takes a single --n");
  }
  if (mode == Mode::WernerScan) {
    if (grid.explicit_values.empty() && !(grid.step > 0.0)) {
      throw std::invalid_argument("alpha grid step must be > 0");
    }
    for (double a : grid.values()) WernerParams(d, a);
  }
  if (mode == Mode::Compare || mode == Mode::Classify) WernerParams(d, alpha);
  if (samples < 0) throw std::invalid_argument("--samples must be >= 0");
  if (seesaw.restarts < 1) throw std::invalid_argument("--restarts must be >= 1");
  if (seesaw.max_iterations < 1) throw std::invalid_argument("--max-iterations must be >= 1");
  if (!(seesaw.tolerance > 0.0)) throw std::invalid_argument("--tolerance must be > 0");
  if (mode != Mode::Classify && out.empty()) throw std::invalid_argument("--out is required");
}

std::string classify_line(const WernerParams& p) {
  return std::string(to_string(classify_werner(p))) + " (1/d=" + format_short(1.0 / p.d()) +
         ", 1/2=" + format_short(0.5) + ")";
}

std::string werner_scan_csv(const ScanConfig& cfg) {
  cfg.validate();
  std::ostringstream csv;
  csv << kWernerScanHeader << '\n';
  for (double alpha : cfg.grid.values()) {
    const WernerParams params(cfg.d, alpha);
    const HermitianOperator w = werner_pt(params);
    for (int n : cfg.copies) {
      const auto t0 = Clock::now();
      const ComparisonReport r = compare(w, n, cfg.seesaw);
      const long long ms = elapsed_ms(t0);
      const std::string analytic = (n == 1 && alpha >= 0.0) ? format_double(1.0 - 2.0 * alpha) : "";
      csv << cfg.d << ',' << n << ',' << format_double(alpha) << ',' << cfg.seesaw.seed << ','
          << cfg.seesaw.restarts << ',' << format_double(r.seesaw_min) << ','
          << format_double(r.extremal_min) << ',' << analytic << ',' << format_double(r.gap)
          << ',' << (r.flag ? 1 : 0) << ',' << r.converged_restarts() << ',' << ms << '\n';
    }
  }
  return csv.str();
}

std::string family_scan_json(const ScanConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  nlohmann::json entries = nlohmann::json::array();
  int valid = 0;
  int nppt = 0;
  int two_positive = 0;
  int flagged = 0;
  double most_negative_gap = 0.0;
  for (int k = 0; k < cfg.samples; ++k) {
    const std::uint64_t sample_seed = detail::derive_seed(cfg.seesaw.seed, static_cast<std::uint64_t>(k));
    const DiagonalInvariantPT fp = family_sample(sample_seed, cfg.d, cfg.constraints);
    SeesawConfig seesaw = cfg.seesaw;
    seesaw.seed = sample_seed;
    const ComparisonReport r = compare(family_pt(fp), 1, seesaw);
    const bool is_valid = family_is_valid_state(fp).valid;
    const bool is_nppt = family_is_nppt(fp);
    const bool is_two_positive = family_two_positive(fp);
    valid += is_valid;
    nppt += is_nppt;
    two_positive += is_two_positive;
    flagged += r.flag;
    if (k == 0 || r.gap < most_negative_gap) most_negative_gap = r.gap;
    entries.push_back({{"index", k},
                       {"seed", sample_seed},
                       {"family", to_json(fp)},
                       {"valid", is_valid},
                       {"nppt", is_nppt},
                       {"two_positive", is_two_positive},
                       {"seesaw_min", r.seesaw_min},
                       {"extremal_min", r.extremal_min},
                       {"gap", r.gap},
                       {"flag", r.flag}});
  }
  nlohmann::json doc = {
      {"schema", kReportSchema},
      {"d", cfg.d},
      {"samples", cfg.samples},
      {"seed", cfg.seesaw.seed},
      {"restarts", cfg.seesaw.restarts},
      {"constraints", constraint_list(cfg.constraints)},
      {"zero_z", cfg.constraints.zero_coherence},
      {"entries", std::move(entries)},
      {"summary",
       {{"count", cfg.samples},
        {"valid", valid},
        {"nppt", nppt},
        {"two_positive", two_positive},
        {"flagged", flagged},
        {"most_negative_gap", most_negative_gap}}},
      {"wall_ms", elapsed_ms(t0)},
  };
  return doc.dump(2) + "\n";
}

CompareOutput compare_json(const ScanConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  const WernerParams params(cfg.d, cfg.alpha);
  ComparisonReport r = compare(werner_pt(params), cfg.copies.front(), cfg.seesaw);
  nlohmann::json doc = to_json(r, cfg.alpha);
  doc["wall_ms"] = elapsed_ms(t0);
  return {doc.dump(2) + "\n", std::move(r)};
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int cmd_classify(int d, double alpha, std::ostream& log) {
  log << classify_line(WernerParams(d, alpha)) << '\n';
  return kExitOk;
}

int cmd_werner_scan(const ScanConfig& cfg, std::ostream& log) {
  const std::string csv = werner_scan_csv(cfg);
  write_text_file(cfg.out, csv);
  int rows = 0;
  bool any_flag = false;
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    ++rows;
    // flag is the 10th column
    std::size_t pos = 0;
    for (int c = 0; c < 9; ++c) pos = line.find(',', pos) + 1;
    any_flag = any_flag || line.compare(pos, 2, "1,") == 0;
  }
  log << "werner-scan: " << rows << " rows -> " << cfg.out << '\n';
  if (any_flag) {
    log << "werner-scan: at least one row flagged (seesaw below the extremal-set minimum)\n";
    return kExitFlagged;
  }
  return kExitOk;
}

int cmd_family_scan(const ScanConfig& cfg, std::ostream& log) {
  const std::string text = family_scan_json(cfg);
  write_text_file(cfg.out, text);
  const auto doc = nlohmann::json::parse(text);
  const int flagged = doc["summary"]["flagged"].get<int>();
  log << "family-scan: " << cfg.samples << " samples, " << flagged << " flagged -> " << cfg.out
      << '\n';
  return flagged > 0 ? kExitFlagged : kExitOk;
}

int cmd_compare(const ScanConfig& cfg, std::ostream& log) {
  const CompareOutput result = compare_json(cfg);
  write_text_file(cfg.out, result.json);
  const ComparisonReport& r = result.report;
  log << "compare d=" << r.d << " n=" << r.n << " alpha=" << format_double(cfg.alpha)
      << ": seesaw_min=" << format_double(r.seesaw_min)
      << " extremal_min=" << format_double(r.extremal_min) << " gap=" << format_double(r.gap)
      << " flag=" << (r.flag ? "true" : "false") << '\n';
  if (r.seesaw_min < -kGapTolerance) {
    log << "distillable witness found: Schmidt-rank-2 vector with negative " << r.n
        << "-copy expectation\n";
  }
  if (r.flag) {
    log << "FLAG: seesaw minimum lies below every enumerated extremal\n";
    return kExitFlagged;
  }
  return kExitOk;
}

int cmd_plot(const std::string& csv_path, const std::string& x_column,
             const std::vector<std::string>& y_columns, const std::string& out_path,
             std::ostream& log) {
  const std::string svg = render_svg_plot(read_text_file(csv_path), x_column, y_columns);
  write_text_file(out_path, svg);
  log << "plot -> " << out_path << '\n';
  return kExitOk;
}

namespace {

struct CommonOptions {
  int d = 3;
  std::vector<int> copies{1};
  double alpha = 0.4;
  double alpha_start = 0.1;
  double alpha_stop = 0.9;
  double alpha_step = 0.1;
  std::vector<double> alphas;
  int samples = 100;
  std::vector<std::string> constraints;
  bool zero_z = false;
  int restarts = 50;
  int max_iterations = 500;
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
};

void add_seesaw_options(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--restarts", o.restarts, "Random seesaw restarts");
  sub->add_option("--max-iterations", o.max_iterations, "Iterations per restart");
  sub->add_option("--tolerance", o.tolerance, "Stop when |delta objective| < tolerance");
  sub->add_option("--seed", o.seed, "Master seed");
  sub->add_option("--out", o.out, "Output path");
  sub->add_option("--config", o.config, "JSON config file; flags override its values");
}

// Defaults < config file < explicit flags.
ScanConfig build_config(Mode mode, CLI::App* sub, const CommonOptions& o) {
  nlohmann::json file = nlohmann::json::object();
  if (!o.config.empty()) file = nlohmann::json::parse(read_text_file(o.config));
  if (!file.is_object()) throw std::invalid_argument("config file must hold a JSON object");

  auto given = [sub](const char* flag) { return sub->get_option_no_throw(flag) != nullptr &&
                                                sub->get_option(flag)->count() > 0; };
  auto pick = [&](const char* flag, const char* key, auto value) {
    using T = decltype(value);
    if (!given(flag) && file.contains(key)) return file.at(key).get<T>();
    return value;
  };

  ScanConfig cfg;
  cfg.mode = mode;
  cfg.d = pick("--d", "d", o.d);
  if (!given("--n") && file.contains("n")) {
    const auto& n = file.at("n");
    cfg.copies = n.is_array() ? n.get<std::vector<int>>() : std::vector<int>{n.get<int>()};
  } else {
    cfg.copies = o.copies;
  }
  cfg.alpha = pick("--alpha", "alpha", o.alpha);
  cfg.grid.start = pick("--alpha-start", "alpha_start", o.alpha_start);
  cfg.grid.stop = pick("--alpha-stop", "alpha_stop", o.alpha_stop);
  cfg.grid.step = pick("--alpha-step", "alpha_step", o.alpha_step);
  cfg.grid.explicit_values = pick("--alphas", "alphas", o.alphas);
  cfg.samples = pick("--samples", "samples", o.samples);
  cfg.constraints = parse_constraints(pick("--constraints", "constraints", o.constraints),
                                      pick("--zero-z", "zero_z", o.zero_z));
  cfg.seesaw.restarts = pick("--restarts", "restarts", o.restarts);
  cfg.seesaw.max_iterations = pick("--max-iterations", "max_iterations", o.max_iterations);
  cfg.seesaw.tolerance = pick("--tolerance", "tolerance", o.tolerance);
  cfg.seesaw.seed = pick("--seed", "seed", o.seed);
  cfg.seesaw.threads = threads_from_env();
  cfg.out = pick("--out", "out", o.out);
  cfg.validate();
  return cfg;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"nppt-lab: Werner / diagonal-invariant distillability toolkit"};
  app.require_subcommand(1);

  CommonOptions o;
  int classify_d = 3;
  double classify_alpha = 0.0;
  std::string plot_csv;
  std::string plot_x;
  std::vector<std::string> plot_y;
  std::string plot_out;

  auto* classify = app.add_subcommand("classify", "Region of a Werner state");
  classify->add_option("--d", classify_d, "Local dimension")->required();
  classify->add_option("--alpha", classify_alpha, "Mixing parameter")->required();

  auto* werner = app.add_subcommand("werner-scan", "Seesaw vs extremal minima over an alpha grid");
  werner->add_option("--d", o.d, "Local dimension");
  werner->add_option("--n", o.copies, "Copy counts")->delimiter(',');
  werner->add_option("--alpha-start", o.alpha_start, "Grid start");
  werner->add_option("--alpha-stop", o.alpha_stop, "Grid stop (inclusive)");
  werner->add_option("--alpha-step", o.alpha_step, "Grid step");
  werner->add_option("--alphas", o.alphas, "Explicit alpha list")->delimiter(',');
  add_seesaw_options(werner, o);

  auto* family = app.add_subcommand("family-scan", "Sample the diagonal-invariant family");
  family->add_option("--d", o.d, "Local dimension");
  family->add_option("--samples", o.samples, "Number of samples");
  family->add_option("--constraints", o.constraints, "Subset of valid,nppt,two_positive")
      ->delimiter(',');
  family->add_flag("--zero-z", o.zero_z, "Force every z_ij = 0");
  add_seesaw_options(family, o);

  auto* cmp = app.add_subcommand("compare", "Compare seesaw and extremal minima for one Werner state");
  cmp->add_option("--d", o.d, "Local dimension");
  cmp->add_option("--alpha", o.alpha, "Mixing parameter");
  cmp->add_option("--n", o.copies, "Copy count");
  add_seesaw_options(cmp, o);

  auto* plot = app.add_subcommand("plot", "SVG line plot of CSV columns");
  plot->add_option("--csv", plot_csv, "Input CSV")->required();
  plot->add_option("--x", plot_x, "x column")->required();
  plot->add_option("--y", plot_y, "y columns")->required()->delimiter(',');
  plot->add_option("--out", plot_out, "Output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadArguments;
  }

  try {
    if (*classify) return cmd_classify(classify_d, classify_alpha, out);
    if (*werner) return cmd_werner_scan(build_config(Mode::WernerScan, werner, o), out);
    if (*family) return cmd_family_scan(build_config(Mode::FamilyScan, family, o), out);
    if (*cmp) return cmd_compare(build_config(Mode::Compare, cmp, o), out);
    if (*plot) return cmd_plot(plot_csv, plot_x, plot_y, plot_out, out);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const SamplerExhausted& e) {
    err << "sampler exhausted: " << e.what() << '\n';
    return kExitSamplerExhausted;
  } catch (const PlotInputError& e) {
    err << "plot input: " << e.what() << '\n';
    return kExitPlotInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadArguments;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitBadArguments;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return kExitBadArguments;
}

}  // namespace nppt::cli
