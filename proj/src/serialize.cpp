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

#include "nppt/serialize.hpp"

#include <cstdio>
#include <stdexcept>

namespace nppt {

nlohmann::json to_json(const DiagonalInvariantPT& fp) {
  const int d = fp.d();
  nlohmann::json rho = nlohmann::json::array();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho.push_back(fp.rho()(i, j));
  nlohmann::json z = nlohmann::json::array();
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const Complex v = fp.z()(i, j);
      z.push_back({{"i", i + 1}, {"j", j + 1}, {"re", v.real()}, {"im", v.imag()}});
    }
  }
  return {{"d", d}, {"rho", std::move(rho)}, {"z", std::move(z)}};
}

DiagonalInvariantPT family_from_json(const nlohmann::json& j) {
  const int d = j.at("d").get<int>();
  if (d < 2) throw std::invalid_argument("family JSON: d must be >= 2");
  const auto& rho_in = j.at("rho");
  if (!rho_in.is_array() || rho_in.size() != static_cast<std::size_t>(d) * d) {
    throw std::invalid_argument("family JSON: rho must hold d*d numbers");
  }
  RMatrix rho(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) rho(i, k) = rho_in.at(static_cast<std::size_t>(i * d + k)).get<double>();

  CMatrix z = CMatrix::Zero(d, d);
  for (const auto& entry : j.at("z")) {
    const int i = entry.at("i").get<int>() - 1;
    const int k = entry.at("j").get<int>() - 1;
    if (i < 0 || k < 0 || i >= d || k >= d || i == k) {
      throw std::invalid_argument("family JSON: z index out of range");
    }
    const Complex v(entry.at("re").get<double>(), entry.at("im").get<double>());
    z(i, k) = v;
    z(k, i) = std::conj(v);
  }
  return DiagonalInvariantPT(d, std::move(rho), std::move(z));
}

nlohmann::json to_json(const ComparisonReport& report, const nlohmann::json& subject) {
  nlohmann::json iterations = nlohmann::json::array();
  for (const auto& t : report.traces) iterations.push_back(t.objective.size() / 2);
  return {
      {"schema", kReportSchema},
      {"d", report.d},
      {"n", report.n},
      {"alpha_or_family", subject},
      {"seesaw_min", report.seesaw_min},
      {"extremal_min", report.extremal_min},
      {"type_ii_min", report.type_ii_min},
      {"gap", report.gap},
      {"flag", report.flag},
      {"restarts", report.restarts},
      {"seed", report.seed},
      {"best_restart", report.best_restart},
      {"converged_restarts", report.converged_restarts()},
      {"iterations_per_restart", std::move(iterations)},
  };
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace nppt
