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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nppt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr Index kMaxProductDim = 4096;

enum class Side { A, B };

// One tensor factor. Copies are numbered from 1.
struct Subsystem {
  Side side;
  int copy;
  int dim;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

// Tensor factors, first entry most significant in the flattened index.
// Canonical ordering for n copies is A1,B1,A2,B2,...
using Dims = std::vector<Subsystem>;

// {A copy, B copy} with local dimension d on both sides.
Dims bipartite_dims(int d, int copy = 1);

// A1,B1,...,An,Bn with local dimension d everywhere.
Dims canonical_dims(int d, int n);

// Product of local dimensions. Throws std::invalid_argument for an empty list,
// a nonpositive local dimension, or a product above kMaxProductDim.
Index product_dim(const Dims& dims);

int max_copy(const Dims& dims);

// Dense complex self-adjoint matrix on a labeled tensor-product space.
// Construction rejects (does not symmetrize) input that is not Hermitian
// within kHermitianTolerance entrywise.
class HermitianOperator {
 public:
  HermitianOperator(Dims dims, CMatrix entries);

  static HermitianOperator identity(Dims dims);

  const Dims& dims() const { return dims_; }
  const CMatrix& matrix() const { return entries_; }
  Index size() const { return entries_.rows(); }
  Complex operator()(Index row, Index col) const { return entries_(row, col); }

  double trace() const { return entries_.trace().real(); }

 private:
  Dims dims_;
  CMatrix entries_;
};

// Unit vector (within kNormTolerance) on a labeled tensor-product space.
class StateVector {
 public:
  StateVector(Dims dims, CVector entries);

  const Dims& dims() const { return dims_; }
  const CVector& vector() const { return entries_; }
  Index size() const { return entries_.size(); }

 private:
  Dims dims_;
  CVector entries_;
};

// Split of the tensor factors into an A group and a B group. The flattened
// group indices keep the relative order of the factors, so full_index(a, b)
// is a bijection between [0, a_dim) x [0, b_dim) and the full index range.
class BipartiteCut {
 public:
  BipartiteCut(Dims dims, std::vector<std::size_t> a_group);

  // A group = every Side::A factor, B group = every Side::B factor.
  static BipartiteCut by_side(const Dims& dims);

  const Dims& dims() const { return dims_; }
  const std::vector<std::size_t>& a_group() const { return a_group_; }
  const std::vector<std::size_t>& b_group() const { return b_group_; }
  Index a_dim() const { return a_dim_; }
  Index b_dim() const { return b_dim_; }

  Index full_index(Index a, Index b) const { return full_[a * b_dim_ + b]; }

  // Reshape a vector on dims() into the a_dim x b_dim coefficient matrix.
  CMatrix reshape(const CVector& v) const;
  CVector flatten(const CMatrix& coeff) const;

 private:
  Dims dims_;
  std::vector<std::size_t> a_group_;
  std::vector<std::size_t> b_group_;
  Index a_dim_ = 1;
  Index b_dim_ = 1;
  std::vector<Index> full_;
};

// Kronecker product; Y's copy indices are shifted past X's largest copy.
HermitianOperator tensor_product(const HermitianOperator& x, const HermitianOperator& y);
StateVector tensor_product(const StateVector& x, const StateVector& y);

// n-fold tensor product with copy indices 1..n (for a single-copy input).
HermitianOperator tensor_power(const HermitianOperator& x, int n);

// Transposes the indices of every factor on `side`. Exact involution.
HermitianOperator partial_transpose(const HermitianOperator& x, Side side);

// Result factor k is input factor new_order[k].
HermitianOperator permute_copies(const HermitianOperator& x,
                                 std::span<const std::size_t> new_order);
StateVector permute_copies(const StateVector& v, std::span<const std::size_t> new_order);

// Order that takes canonical A1,B1,...,An,Bn to A1..An,B1..Bn.
std::vector<std::size_t> sides_major_order(const Dims& dims);
std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> order);

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // column k pairs with values(k)
};

EigenDecomposition eigh(const HermitianOperator& x);
double min_eigenvalue(const HermitianOperator& x);

struct SchmidtDecomposition {
  RVector values;   // descending
  CMatrix a_basis;  // a_dim x r, orthonormal columns
  CMatrix b_basis;  // b_dim x r, orthonormal columns
};

// v = sum_k values(k) a_basis.col(k) (x) b_basis.col(k) across `cut`.
SchmidtDecomposition schmidt_decompose(const StateVector& v, const BipartiteCut& cut);

// Count of Schmidt values above `tol`.
int schmidt_rank(const StateVector& v, const BipartiteCut& cut, double tol = 1e-8);

// <v|W|v>; throws std::invalid_argument on mismatched dims.
double expectation(const HermitianOperator& w, const StateVector& v);

// Frobenius pairing Tr(X Y) of two Hermitian operators on the same dims.
double frobenius_pairing(const HermitianOperator& x, const HermitianOperator& y);

}  // namespace nppt
