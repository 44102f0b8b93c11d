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

#include "nppt/twirl.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nppt {

namespace {

// Local dimension of each copy for dims A1,B1,A2,B2,...
std::vector<int> copy_pair_dims(const Dims& dims) {
  if (dims.empty() || dims.size() % 2 != 0) {
    throw std::invalid_argument("expected dims A1,B1,...,An,Bn");
  }
  std::vector<int> out;
  for (std::size_t m = 0; m < dims.size(); m += 2) {
    const Subsystem& a = dims[m];
    const Subsystem& b = dims[m + 1];
    if (a.side != Side::A || b.side != Side::B || a.copy != b.copy) {
      throw std::invalid_argument("expected dims A1,B1,...,An,Bn");
    }
    if (a.dim != b.dim) throw std::invalid_argument("copy has unequal local dimensions");
    out.push_back(a.dim);
  }
  return out;
}

int single_copy_dim(const Dims& dims) {
  const auto d = copy_pair_dims(dims);
  if (d.size() != 1) throw std::invalid_argument("expected a single A,B copy");
  return d.front();
}

// Per-copy (i, j) pairs of a flat index, most significant copy first.
struct CopyDigits {
  std::vector<int> dims;
  std::vector<std::vector<int>> first;   // [flat][copy] -> i
  std::vector<std::vector<int>> second;  // [flat][copy] -> j

  explicit CopyDigits(std::vector<int> local) : dims(std::move(local)) {
    Index n = 1;
    for (int d : dims) n *= static_cast<Index>(d) * d;
    first.assign(static_cast<std::size_t>(n), std::vector<int>(dims.size()));
    second = first;
    for (Index r = 0; r < n; ++r) {
      Index rem = r;
      for (std::size_t m = dims.size(); m-- > 0;) {
        const int d = dims[m];
        second[static_cast<std::size_t>(r)][m] = static_cast<int>(rem % d);
        rem /= d;
        first[static_cast<std::size_t>(r)][m] = static_cast<int>(rem % d);
        rem /= d;
      }
    }
  }

  bool survives(Index r, Index c) const {
    const auto& ri = first[static_cast<std::size_t>(r)];
    const auto& rj = second[static_cast<std::size_t>(r)];
    const auto& ck = first[static_cast<std::size_t>(c)];
    const auto& cl = second[static_cast<std::size_t>(c)];
    for (std::size_t m = 0; m < dims.size(); ++m) {
      const bool same = ri[m] == ck[m] && rj[m] == cl[m];
      const bool correlated = ri[m] == rj[m] && ck[m] == cl[m];
      if (!same && !correlated) return false;
    }
    return true;
  }
};

HermitianOperator pinch(const HermitianOperator& x, const std::vector<int>& local) {
  const CopyDigits digits(local);
  CMatrix y = CMatrix::Zero(x.size(), x.size());
  for (Index c = 0; c < x.size(); ++c)
    for (Index r = 0; r < x.size(); ++r)
      if (digits.survives(r, c)) y(r, c) = x(r, c);
  return HermitianOperator(x.dims(), std::move(y));
}

}  // namespace

AngleTuple::AngleTuple(std::vector<double> angles) : angles_(std::move(angles)) {
  for (double t : angles_) {
    if (!(t >= 0.0 && t < 2.0 * std::numbers::pi)) {
      throw std::invalid_argument("angles must lie in [0, 2pi)");
    }
  }
}

HermitianOperator conjugate_by_phases(const HermitianOperator& x, const AngleTuple& theta) {
  const int d = single_copy_dim(x.dims());
  if (theta.size() != static_cast<std::size_t>(d)) {
    throw std::invalid_argument("angle tuple length must equal d");
  }
  CVector u(static_cast<Index>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) u(static_cast<Index>(i) * d + j) = std::polar(1.0, theta[i] - theta[j]);
  CMatrix y = u.asDiagonal() * x.matrix() * u.conjugate().asDiagonal();
  return HermitianOperator(x.dims(), std::move(y));
}

HermitianOperator diagonal_twirl(const HermitianOperator& x) {
  return pinch(x, {single_copy_dim(x.dims())});
}

HermitianOperator diagonal_twirl_oracle(const HermitianOperator& x, int q) {
  if (q < 5) throw std::invalid_argument("grid size q must be >= 5");
  const int d = single_copy_dim(x.dims());
  const double step = 2.0 * std::numbers::pi / q;

  std::vector<int> k(static_cast<std::size_t>(d), 0);
  std::vector<double> theta(static_cast<std::size_t>(d));
  CMatrix sum = CMatrix::Zero(x.size(), x.size());
  long long count = 0;
  while (true) {
    for (int m = 0; m < d; ++m) theta[static_cast<std::size_t>(m)] = step * k[static_cast<std::size_t>(m)];
    sum += conjugate_by_phases(x, AngleTuple(theta)).matrix();
    ++count;
    int m = d - 1;
    while (m >= 0 && ++k[static_cast<std::size_t>(m)] == q) {
      k[static_cast<std::size_t>(m)] = 0;
      --m;
    }
    if (m < 0) break;
  }
  sum /= static_cast<double>(count);
  // Rounding leaves the grid sum Hermitian only to ~1e-16.
  CMatrix herm = 0.5 * (sum + sum.adjoint());
  return HermitianOperator(x.dims(), std::move(herm));
}

HermitianOperator n_copy_diagonal_twirl(const HermitianOperator& x) {
  return pinch(x, copy_pair_dims(x.dims()));
}

HermitianOperator isotropic_twirl(const HermitianOperator& x) {
  const int d = single_copy_dim(x.dims());
  const double dd = static_cast<double>(d) * d;
  const double tr = x.trace();
  Complex overlap = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      overlap += x(static_cast<Index>(i) * d + i, static_cast<Index>(j) * d + j);
  const double tr_xp = overlap.real() / d;
  const double a = (tr - tr_xp) / (dd - 1.0);
  const double b = (dd * tr_xp - tr) / (dd - 1.0);

  const Index n = x.size();
  CMatrix y = a * CMatrix::Identity(n, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      y(static_cast<Index>(i) * d + i, static_cast<Index>(j) * d + j) += b / d;
  return HermitianOperator(x.dims(), std::move(y));
}

bool is_diagonal_invariant(const HermitianOperator& x, double tol) {
  const CopyDigits digits(copy_pair_dims(x.dims()));
  for (Index c = 0; c < x.size(); ++c)
    for (Index r = 0; r < x.size(); ++r)
      if (!digits.survives(r, c) && std::abs(x(r, c)) > tol) return false;
  return true;
}

int canonical_local_dim(const Dims& dims) {
  const auto local = copy_pair_dims(dims);
  for (int d : local)
    if (d != local.front()) throw std::invalid_argument("copies have different local dimensions");
  return local.front();
}

}  // namespace nppt
