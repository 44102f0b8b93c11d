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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nppt/linalg.hpp"

namespace nppt {

// Werner family in d x d, parametrized through the partial transpose
// rho^{T_B} = Id - d*alpha*P. Unnormalized; rho >= 0 iff -1 <= alpha <= 1.
class WernerParams {
 public:
  WernerParams(int d, double alpha);

  int d() const { return d_; }
  double alpha() const { return alpha_; }

 private:
  int d_;
  double alpha_;
};

enum class WernerRegion {
  PptSeparable,              // -1 <= alpha <= 1/d
  NpptOneCopyUndistillable,  // 1/d < alpha <= 1/2
  NpptOneCopyDistillable,    // 1/2 < alpha <= 1
};

std::string_view to_string(WernerRegion region);

StateVector max_entangled(int d);
HermitianOperator max_entangled_projector(int d);

// Swap V|k,l> = |l,k> on d x d.
HermitianOperator swap_operator(int d);

HermitianOperator werner_pt(const WernerParams& p);

// Partial transpose of werner_pt, i.e. Id - alpha*V.
HermitianOperator werner_state(const WernerParams& p);

WernerRegion classify_werner(const WernerParams& p);

// Partial transposes invariant under U_theta (x) conj(U_theta) for all
// diagonal unitaries U_theta: diagonal weights rho_ij on |i,j> plus a
// Hermitian block on span{|i,i>} with entries rho_ii on the diagonal and
// -z_ij off it. For d = 3 this is the 9x9 twelve-parameter family.
//
// rho(i, j) holds every weight including the diagonal rho_ii; z is Hermitian
// with a zero diagonal.
class DiagonalInvariantPT {
 public:
  DiagonalInvariantPT(int d, RMatrix rho, CMatrix z);

  static DiagonalInvariantPT werner_embedding(const WernerParams& p);

  int d() const { return d_; }
  const RMatrix& rho() const { return rho_; }
  const CMatrix& z() const { return z_; }

  // M_ii = rho_ii, M_ij = -z_ij.
  CMatrix corr_block() const;

  double trace() const { return rho_.sum(); }

 private:
  int d_;
  RMatrix rho_;
  CMatrix z_;
};

HermitianOperator family_pt(const DiagonalInvariantPT& fp);

// The state itself (partial transpose of family_pt).
HermitianOperator family_state(const DiagonalInvariantPT& fp);

struct Validity {
  bool valid = true;
  std::vector<std::string> violations;
};

// rho_ij >= 0 for all i, j and rho_ij * rho_ji >= |z_ij|^2 for i != j.
Validity family_is_valid_state(const DiagonalInvariantPT& fp);

// Correlated block has an eigenvalue below -1e-10.
bool family_is_nppt(const DiagonalInvariantPT& fp);

// rho_ii * rho_jj >= |z_ij|^2 for i < j, nonnegative weights.
bool family_two_positive(const DiagonalInvariantPT& fp);

// z_ij -> z_ij * exp(i(phi_i - phi_j)); a phase change of the A-side basis.
DiagonalInvariantPT family_gauge_transform(const DiagonalInvariantPT& fp,
                                           std::span<const double> phases);

// z_ij z_jk z_ki; its argument is gauge invariant.
Complex cycle_product(const DiagonalInvariantPT& fp, int i, int j, int k);

struct FamilyConstraints {
  bool valid = false;
  bool nppt = false;
  bool two_positive = false;
  bool zero_coherence = false;  // force every z_ij = 0
};

inline constexpr int kSamplerBudget = 100000;

class SamplerExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejection sampler, normalized to unit trace. Deterministic in `seed`.
// Throws SamplerExhausted after kSamplerBudget rejected draws.
DiagonalInvariantPT family_sample(std::uint64_t seed, int d, const FamilyConstraints& constraints);

}  // namespace nppt
