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

#include "nppt/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace nppt {

namespace {

std::vector<Index> strides_of(const Dims& dims) {
  std::vector<Index> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) {
    strides[k - 1] = strides[k] * dims[k].dim;
  }
  return strides;
}

Index digit(Index flat, const std::vector<Index>& strides, const Dims& dims, std::size_t k) {
  return (flat / strides[k]) % dims[k].dim;
}

Dims shifted_concat(const Dims& x, const Dims& y) {
  Dims out = x;
  const int offset = max_copy(x);
  for (Subsystem s : y) {
    s.copy += offset;
    out.push_back(s);
  }
  return out;
}

// Flat index map old -> new for a factor permutation.
std::vector<Index> permutation_map(const Dims& dims, std::span<const std::size_t> new_order,
                                   Dims& new_dims) {
  const std::size_t k_count = dims.size();
  if (new_order.size() != k_count) {
    throw std::invalid_argument("permute_copies: permutation length " +
                                std::to_string(new_order.size()) + " != factor count " +
                                std::to_string(k_count));
  }
  std::vector<bool> seen(k_count, false);
  for (std::size_t p : new_order) {
    if (p >= k_count || seen[p]) {
      throw std::invalid_argument("permute_copies: malformed permutation");
    }
    seen[p] = true;
  }
  new_dims.clear();
  for (std::size_t p : new_order) new_dims.push_back(dims[p]);

  const auto old_strides = strides_of(dims);
  const auto new_strides = strides_of(new_dims);
  const Index n = product_dim(dims);
  std::vector<Index> map(static_cast<std::size_t>(n));
  for (Index r = 0; r < n; ++r) {
    Index target = 0;
    for (std::size_t k = 0; k < k_count; ++k) {
      target += digit(r, old_strides, dims, new_order[k]) * new_strides[k];
    }
    map[static_cast<std::size_t>(r)] = target;
  }
  return map;
}

}  // namespace

Dims bipartite_dims(int d, int copy) {
  return {{Side::A, copy, d}, {Side::B, copy, d}};
}

Dims canonical_dims(int d, int n) {
  if (n < 1) throw std::invalid_argument("copy count must be >= 1");
  Dims dims;
  for (int c = 1; c <= n; ++c) {
    dims.push_back({Side::A, c, d});
    dims.push_back({Side::B, c, d});
  }
  return dims;
}

Index product_dim(const Dims& dims) {
  if (dims.empty()) throw std::invalid_argument("empty subsystem list");
  Index n = 1;
  for (const auto& s : dims) {
    if (s.dim < 1) throw std::invalid_argument("local dimension must be positive");
    n *= s.dim;
    if (n > kMaxProductDim) {
      throw std::invalid_argument("product dimension exceeds " + std::to_string(kMaxProductDim));
    }
  }
  return n;
}

int max_copy(const Dims& dims) {
  int m = 0;
  for (const auto& s : dims) m = std::max(m, s.copy);
  return m;
}

HermitianOperator::HermitianOperator(Dims dims, CMatrix entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  const Index n = product_dim(dims_);
  if (entries_.rows() != n || entries_.cols() != n) {
    throw std::invalid_argument("operator size " + std::to_string(entries_.rows()) + "x" +
                                std::to_string(entries_.cols()) +
                                " does not match product dimension " + std::to_string(n));
  }
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= kHermitianTolerance)) {
    throw std::invalid_argument("operator is not Hermitian (max |X - X^H| = " +
                                std::to_string(asym) + ")");
  }
}

HermitianOperator HermitianOperator::identity(Dims dims) {
  const Index n = product_dim(dims);
  return HermitianOperator(std::move(dims), CMatrix::Identity(n, n));
}

StateVector::StateVector(Dims dims, CVector entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  const Index n = product_dim(dims_);
  if (entries_.size() != n) {
    throw std::invalid_argument("state size does not match product dimension");
  }
  if (!(std::abs(entries_.norm() - 1.0) <= kNormTolerance)) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

BipartiteCut::BipartiteCut(Dims dims, std::vector<std::size_t> a_group)
    : dims_(std::move(dims)), a_group_(std::move(a_group)) {
  const Index n = product_dim(dims_);
  std::vector<bool> in_a(dims_.size(), false);
  for (std::size_t p : a_group_) {
    if (p >= dims_.size() || in_a[p]) throw std::invalid_argument("malformed cut");
    in_a[p] = true;
  }
  std::sort(a_group_.begin(), a_group_.end());
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (!in_a[k]) b_group_.push_back(k);
  }
  if (a_group_.empty() || b_group_.empty()) {
    throw std::invalid_argument("cut needs a nonempty group on each side");
  }
  for (std::size_t p : a_group_) a_dim_ *= dims_[p].dim;
  for (std::size_t p : b_group_) b_dim_ *= dims_[p].dim;

  const auto strides = strides_of(dims_);
  full_.assign(static_cast<std::size_t>(n), 0);
  for (Index a = 0; a < a_dim_; ++a) {
    for (Index b = 0; b < b_dim_; ++b) {
      Index flat = 0;
      Index rem = a;
      for (std::size_t g = a_group_.size(); g-- > 0;) {
        const std::size_t p = a_group_[g];
        flat += (rem % dims_[p].dim) * strides[p];
        rem /= dims_[p].dim;
      }
      rem = b;
      for (std::size_t g = b_group_.size(); g-- > 0;) {
        const std::size_t p = b_group_[g];
        flat += (rem % dims_[p].dim) * strides[p];
        rem /= dims_[p].dim;
      }
      full_[static_cast<std::size_t>(a * b_dim_ + b)] = flat;
    }
  }
}

BipartiteCut BipartiteCut::by_side(const Dims& dims) {
  std::vector<std::size_t> a_group;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k].side == Side::A) a_group.push_back(k);
  }
  return BipartiteCut(dims, std::move(a_group));
}

CMatrix BipartiteCut::reshape(const CVector& v) const {
  if (v.size() != a_dim_ * b_dim_) throw std::invalid_argument("reshape: size mismatch");
  CMatrix c(a_dim_, b_dim_);
  for (Index a = 0; a < a_dim_; ++a)
    for (Index b = 0; b < b_dim_; ++b) c(a, b) = v(full_index(a, b));
  return c;
}

CVector BipartiteCut::flatten(const CMatrix& coeff) const {
  if (coeff.rows() != a_dim_ || coeff.cols() != b_dim_) {
    throw std::invalid_argument("flatten: shape mismatch");
  }
  CVector v(a_dim_ * b_dim_);
  for (Index a = 0; a < a_dim_; ++a)
    for (Index b = 0; b < b_dim_; ++b) v(full_index(a, b)) = coeff(a, b);
  return v;
}

HermitianOperator tensor_product(const HermitianOperator& x, const HermitianOperator& y) {
  Dims dims = shifted_concat(x.dims(), y.dims());
  product_dim(dims);
  CMatrix k = Eigen::kroneckerProduct(x.matrix(), y.matrix());
  return HermitianOperator(std::move(dims), std::move(k));
}

StateVector tensor_product(const StateVector& x, const StateVector& y) {
  Dims dims = shifted_concat(x.dims(), y.dims());
  product_dim(dims);
  CVector k = Eigen::kroneckerProduct(x.vector(), y.vector());
  return StateVector(std::move(dims), std::move(k));
}

HermitianOperator tensor_power(const HermitianOperator& x, int n) {
  if (n < 1) throw std::invalid_argument("tensor_power: n must be >= 1");
  HermitianOperator out = x;
  for (int k = 1; k < n; ++k) out = tensor_product(out, x);
  return out;
}

HermitianOperator partial_transpose(const HermitianOperator& x, Side side) {
  const Dims& dims = x.dims();
  const auto strides = strides_of(dims);
  bool any = false;
  for (const auto& s : dims) any = any || s.side == side;
  if (!any) throw std::invalid_argument("partial_transpose: no subsystem on the chosen side");

  const Index n = x.size();
  std::vector<Index> part(static_cast<std::size_t>(n), 0);
  for (Index r = 0; r < n; ++r) {
    Index p = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (dims[k].side == side) p += digit(r, strides, dims, k) * strides[k];
    }
    part[static_cast<std::size_t>(r)] = p;
  }
  CMatrix y(n, n);
  for (Index c = 0; c < n; ++c) {
    const Index pc = part[static_cast<std::size_t>(c)];
    for (Index r = 0; r < n; ++r) {
      const Index pr = part[static_cast<std::size_t>(r)];
      y(r - pr + pc, c - pc + pr) = x(r, c);
    }
  }
  return HermitianOperator(dims, std::move(y));
}

HermitianOperator permute_copies(const HermitianOperator& x,
                                 std::span<const std::size_t> new_order) {
  Dims new_dims;
  const auto map = permutation_map(x.dims(), new_order, new_dims);
  const Index n = x.size();
  CMatrix y(n, n);
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < n; ++r)
      y(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]) = x(r, c);
  return HermitianOperator(std::move(new_dims), std::move(y));
}

StateVector permute_copies(const StateVector& v, std::span<const std::size_t> new_order) {
  Dims new_dims;
  const auto map = permutation_map(v.dims(), new_order, new_dims);
  CVector y(v.size());
  for (Index r = 0; r < v.size(); ++r) y(map[static_cast<std::size_t>(r)]) = v.vector()(r);
  return StateVector(std::move(new_dims), std::move(y));
}

std::vector<std::size_t> sides_major_order(const Dims& dims) {
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (dims[k].side == Side::A) order.push_back(k);
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (dims[k].side == Side::B) order.push_back(k);
  return order;
}

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> order) {
  std::vector<std::size_t> inv(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (order[k] >= order.size()) throw std::invalid_argument("malformed permutation");
    inv[order[k]] = k;
  }
  return inv;
}

EigenDecomposition eigh(const HermitianOperator& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.matrix());
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const HermitianOperator& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: solver failed");
  return solver.eigenvalues()(0);
}

SchmidtDecomposition schmidt_decompose(const StateVector& v, const BipartiteCut& cut) {
  if (v.dims() != cut.dims()) throw std::invalid_argument("schmidt_decompose: dims mismatch");
  const CMatrix coeff = cut.reshape(v.vector());
  Eigen::JacobiSVD<CMatrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.singularValues(), svd.matrixU(), svd.matrixV().conjugate()};
}

int schmidt_rank(const StateVector& v, const BipartiteCut& cut, double tol) {
  const auto s = schmidt_decompose(v, cut);
  return static_cast<int>((s.values.array() > tol).count());
}

double expectation(const HermitianOperator& w, const StateVector& v) {
  if (w.dims() != v.dims()) throw std::invalid_argument("expectation: dims mismatch");
  return v.vector().dot(w.matrix() * v.vector()).real();
}

double frobenius_pairing(const HermitianOperator& x, const HermitianOperator& y) {
  if (x.dims() != y.dims()) throw std::invalid_argument("frobenius_pairing: dims mismatch");
  // Tr(XY) = sum_{rc} X_rc Y_cr = sum_{rc} X_rc conj(Y_rc) for Hermitian Y.
  return (x.matrix().array() * y.matrix().conjugate().array()).sum().real();
}

}  // namespace nppt
