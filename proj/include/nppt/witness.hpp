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

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nppt/linalg.hpp"

namespace nppt {

// sum_{p,q} coeff(p,q) |a_p>|b_q> across `cut`, with {a_0, a_1} and
// {b_0, b_1} orthonormal and ||coeff||_F = 1. Schmidt rank <= 2 by shape.
class SchmidtRank2Vector {
 public:
  SchmidtRank2Vector(BipartiteCut cut, CMatrix a_pair, CMatrix b_pair, CMatrix coeff);

  const BipartiteCut& cut() const { return cut_; }
  const CMatrix& a_pair() const { return a_pair_; }
  const CMatrix& b_pair() const { return b_pair_; }
  const CMatrix& coeff() const { return coeff_; }

 private:
  BipartiteCut cut_;
  CMatrix a_pair_;  // a_dim x 2
  CMatrix b_pair_;  // b_dim x 2
  CMatrix coeff_;   // 2 x 2
};

StateVector assemble(const SchmidtRank2Vector& v);

struct SeesawConfig {
  int restarts = 50;
  int max_iterations = 500;
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
  // Worker threads for restarts; 0 = hardware concurrency. Output does not
  // depend on this value.
  int threads = 1;
};

struct RestartTrace {
  std::vector<double> objective;  // one entry per half-step
  bool converged = false;
};

struct SeesawResult {
  double min_value;
  SchmidtRank2Vector witness;
  std::size_t best_restart;
  std::vector<RestartTrace> traces;
};

// Alternating minimization of <psi|W|psi> over Schmidt-rank-2 psi across
// `cut`. Restart k draws a Haar-random 2-dim B subspace from a generator
// seeded by (cfg.seed, k). Each warm start is an extra restart beginning
// from the given b_dim x 2 orthonormal basis, indexed after the random ones.
// Ties between restarts go to the lowest index.
SeesawResult seesaw_min(const HermitianOperator& w, const BipartiteCut& cut,
                        const SeesawConfig& cfg, std::span<const CMatrix> warm_starts = {});

// Single-copy computational basis state |i, j>.
using BasisPair = std::pair<int, int>;
// One BasisPair per copy, copy 1 first.
using BasisProduct = std::vector<BasisPair>;

// |<kk|W|ll>|^2 <= <kk|W|kk> <ll|W|ll> with both diagonals >= 0. 0-based.
bool check_schwartz(const HermitianOperator& w, int k, int l);

// All diagonal entries >= 0 and every 2x2 minor of the block on
// span{|i,i>} PSD. w must be a single-copy diagonal-invariant operator.
bool two_positive_closed_form(const HermitianOperator& w);

// <Psi|w^{(x)n}|Psi> for Psi = a |phi1>|i,i> + b |phi2>|j,j>, using
// products of single-copy entries only. phi1, phi2 span n-1 copies.
double typeII_expectation(const HermitianOperator& w, const BasisProduct& phi1,
                          const BasisProduct& phi2, int i, int j, Complex a, Complex b);

// The same vector as a StateVector on canonical n-copy dims.
StateVector type_ii_state(int d, const BasisProduct& phi1, const BasisProduct& phi2, int i, int j,
                          Complex a, Complex b);

struct ExtremalResult {
  double min_value;
  double max_value;
  // Minimum over Type-II candidates only (both branches coupled through
  // the last copy); reported alongside for reference.
  double type_ii_min;
  StateVector argmin;  // canonical n-copy dims
};

// Minimum of <Psi|w^{(x)n}|Psi> over the enumerated extremals: basis
// products, Type-I (an (n-1)-copy extremal times a basis pair) and Type-II
// (a|phi1>|ii> + b|phi2>|jj>, i != j, phi basis products). Recursive in n.
// w must be diagonal-invariant (std::invalid_argument otherwise).
ExtremalResult extremal_search(const HermitianOperator& w, int n);
double extremal_min(const HermitianOperator& w, int n);

inline constexpr double kGapTolerance = 1e-6;

struct ComparisonReport {
  int d;
  int n;
  double seesaw_min;
  double extremal_min;
  double type_ii_min;
  double gap;  // seesaw_min - extremal_min
  bool flag;   // gap < -kGapTolerance
  SchmidtRank2Vector witness;
  std::size_t best_restart;
  std::vector<RestartTrace> traces;
  int restarts;
  std::uint64_t seed;

  int converged_restarts() const;
};

// Runs extremal_search on w and seesaw_min on w^{(x)n} across the
// A1..An | B1..Bn cut. The seesaw is also warm-started from the extremal
// argmin, so gap <= 0 up to rounding and a flag marks a strictly better
// rank-2 vector than every enumerated extremal.
ComparisonReport compare(const HermitianOperator& w, int n, const SeesawConfig& cfg);

}  // namespace nppt
