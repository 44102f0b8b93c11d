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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>

#include <unsupported/Eigen/KroneckerProduct>

#include "nppt/witness.hpp"
#include "random_util.hpp"

namespace nppt {

namespace {

struct RestartOutcome {
  RestartTrace trace;
  CMatrix a_pair;
  CMatrix b_pair;
  CMatrix coeff;
  double value;
};

CMatrix haar_pair(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix g(dim, 2);
  for (Index c = 0; c < 2; ++c)
    for (Index r = 0; r < dim; ++r) g(r, c) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<CMatrix> qr(g);
  return qr.householderQ() * CMatrix::Identity(dim, 2);
}

// Two orthonormal columns spanning the column space of an n x 2 matrix; for
// rank < 2 the remaining left singular vectors pad the basis.
CMatrix column_support(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU);
  return svd.matrixU().leftCols(2);
}

std::pair<double, CVector> lowest_pair(const CMatrix& k) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(k);
  if (solver.info() != Eigen::Success) throw std::runtime_error("seesaw: eigensolver failed");
  return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

RestartOutcome run_restart(const CMatrix& wc, Index a_dim, Index b_dim, CMatrix b_pair,
                           const SeesawConfig& cfg) {
  const CMatrix id_a = CMatrix::Identity(a_dim, a_dim);
  const CMatrix id_b = CMatrix::Identity(b_dim, b_dim);
  RestartOutcome out;
  double previous = std::numeric_limits<double>::infinity();
  CMatrix a_pair;
  CMatrix coeff;

  for (int it = 0; it < cfg.max_iterations; ++it) {
    // Fix span(b_pair): W compressed to H_A (x) span(b_pair), index a*2+q.
    const CMatrix pb = Eigen::kroneckerProduct(id_a, b_pair);
    const auto [value_a, x] = lowest_pair(pb.adjoint() * wc * pb);
    out.trace.objective.push_back(value_a);
    a_pair = column_support(x.reshaped<Eigen::RowMajor>(a_dim, 2));

    // Fix span(a_pair): W compressed to span(a_pair) (x) H_B, index p*b_dim+b.
    const CMatrix pa = Eigen::kroneckerProduct(a_pair, id_b);
    const auto [value_b, y] = lowest_pair(pa.adjoint() * wc * pa);
    out.trace.objective.push_back(value_b);
    const CMatrix ymat = y.reshaped<Eigen::RowMajor>(2, b_dim);
    b_pair = column_support(ymat.transpose());
    coeff = ymat * b_pair.conjugate();

    if (std::abs(previous - value_b) < cfg.tolerance) {
      out.trace.converged = true;
      break;
    }
    previous = value_b;
  }
  coeff /= coeff.norm();
  out.a_pair = std::move(a_pair);
  out.b_pair = std::move(b_pair);
  out.coeff = std::move(coeff);
  out.value = out.trace.objective.back();
  return out;
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t k = next++; k < count; k = next++) fn(k);
        } catch (...) {
          errors[t] = std::current_exception();
          next = count;
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

SeesawResult seesaw_min(const HermitianOperator& w, const BipartiteCut& cut,
                        const SeesawConfig& cfg, std::span<const CMatrix> warm_starts) {
  if (w.dims() != cut.dims()) throw std::invalid_argument("seesaw_min: cut does not match W");
  if (cfg.restarts < 1 || cfg.max_iterations < 1 || !(cfg.tolerance > 0.0)) {
    throw std::invalid_argument("seesaw_min: restarts, max_iterations, tolerance must be positive");
  }
  const Index a_dim = cut.a_dim();
  const Index b_dim = cut.b_dim();
  if (a_dim < 2 || b_dim < 2) {
    throw std::invalid_argument("seesaw_min: each side of the cut needs dimension >= 2");
  }
  for (const auto& start : warm_starts) {
    if (start.rows() != b_dim || start.cols() != 2 ||
        (start.adjoint() * start - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-10) {
      throw std::invalid_argument("seesaw_min: warm start must be an orthonormal b_dim x 2 basis");
    }
  }

  // W in cut order, index a*b_dim + b.
  const Index n = w.size();
  CMatrix wc(n, n);
  for (Index a2 = 0; a2 < a_dim; ++a2)
    for (Index b2 = 0; b2 < b_dim; ++b2)
      for (Index a1 = 0; a1 < a_dim; ++a1)
        for (Index b1 = 0; b1 < b_dim; ++b1)
          wc(a1 * b_dim + b1, a2 * b_dim + b2) = w(cut.full_index(a1, b1), cut.full_index(a2, b2));

  const std::size_t random_count = static_cast<std::size_t>(cfg.restarts);
  const std::size_t total = random_count + warm_starts.size();
  std::vector<std::optional<RestartOutcome>> outcomes(total);
  parallel_for(total, cfg.threads, [&](std::size_t k) {
    CMatrix start;
    if (k < random_count) {
      std::mt19937_64 rng(detail::derive_seed(cfg.seed, k));
      start = haar_pair(b_dim, rng);
    } else {
      start = warm_starts[k - random_count];
    }
    outcomes[k] = run_restart(wc, a_dim, b_dim, std::move(start), cfg);
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < total; ++k)
    if (outcomes[k]->value < outcomes[best]->value) best = k;

  SchmidtRank2Vector witness(cut, outcomes[best]->a_pair, outcomes[best]->b_pair,
                             outcomes[best]->coeff);
  const double value = expectation(w, assemble(witness));
  std::vector<RestartTrace> traces;
  traces.reserve(total);
  for (auto& o : outcomes) traces.push_back(std::move(o->trace));
  return {value, std::move(witness), best, std::move(traces)};
}

}  // namespace nppt
