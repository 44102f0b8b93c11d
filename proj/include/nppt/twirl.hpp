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

#include <vector>

#include "nppt/linalg.hpp"

namespace nppt {

// d angles theta_k in [0, 2pi), labelling U_theta = diag(exp(i theta_k)).
class AngleTuple {
 public:
  explicit AngleTuple(std::vector<double> angles);

  std::size_t size() const { return angles_.size(); }
  double operator[](std::size_t k) const { return angles_[k]; }

 private:
  std::vector<double> angles_;
};

// (U_theta (x) conj(U_theta)) X (U_theta (x) conj(U_theta))^dagger on one copy.
HermitianOperator conjugate_by_phases(const HermitianOperator& x, const AngleTuple& theta);

// Average of conjugate_by_phases over theta uniform on the torus, in closed
// form: <ij|X|kl> survives iff (i = k and j = l) or (i = j and k = l).
HermitianOperator diagonal_twirl(const HermitianOperator& x);

// The same average over the grid theta_m in {2 pi k / q}. Every phase
// exponent has integer coefficients in [-2, 2] per angle, so q >= 5 is exact.
HermitianOperator diagonal_twirl_oracle(const HermitianOperator& x, int q);

// Survival rule applied independently in every copy of A1,B1,...,An,Bn.
HermitianOperator n_copy_diagonal_twirl(const HermitianOperator& x);

// Projection onto span{Id, P} (average over U (x) conj(U), U in U(d)).
HermitianOperator isotropic_twirl(const HermitianOperator& x);

// True when every entry outside the n-copy survival pattern has modulus
// <= tol, i.e. the operator is a fixed point of n_copy_diagonal_twirl.
bool is_diagonal_invariant(const HermitianOperator& x, double tol = kHermitianTolerance);

// Local dimension of a canonical n-copy operator; throws std::invalid_argument
// unless dims read A1,B1,...,An,Bn with one common local dimension.
int canonical_local_dim(const Dims& dims);

}  // namespace nppt
