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

// Independent reference implementations for the tests. Everything here is
// plain loops over indices; none of it calls the library's own kernels.

#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace nppt::testing {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Cplx = std::complex<double>;

inline double max_abs_diff(const CMat& a, const CMat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline CMat random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = Cplx(g(rng), g(rng));
  return (m + m.adjoint()) / 2.0;
}

inline CVec random_unit(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVec v(dim);
  for (Eigen::Index k = 0; k < dim; ++k) v(k) = Cplx(g(rng), g(rng));
  return v / v.norm();
}

inline CMat kron_loops(const CMat& x, const CMat& y) {
  CMat out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index a = 0; a < x.rows(); ++a)
    for (Eigen::Index b = 0; b < x.cols(); ++b)
      for (Eigen::Index c = 0; c < y.rows(); ++c)
        for (Eigen::Index e = 0; e < y.cols(); ++e)
          out(a * y.rows() + c, b * y.cols() + e) = x(a, b) * y(c, e);
  return out;
}

inline CMat kron_power(const CMat& x, int n) {
  CMat out = CMat::Identity(1, 1);
  for (int k = 0; k < n; ++k) out = kron_loops(out, x);
  return out;
}

// <ij|.|kl> -> <il|.|kj> for one A(x)B pair.
inline CMat pt_b_loops(const CMat& x, int da, int db) {
  CMat out(x.rows(), x.cols());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) out(i * db + l, k * db + j) = x(i * db + j, k * db + l);
  return out;
}

inline CMat swap_loops(int d) {
  CMat v = CMat::Zero(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) v(l * d + k, k * d + l) = 1.0;
  return v;
}

// Entrywise: <ii|W|ii> = 1-a, <ij|W|ij> = 1, <ii|W|jj> = -a.
inline CMat werner_pt_entries(int d, double alpha) {
  CMat w = CMat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      w(i * d + j, i * d + j) = (i == j) ? 1.0 - alpha : 1.0;
      if (i != j) w(i * d + i, j * d + j) = -alpha;
    }
  return w;
}

// Index of |k1 l1 k2 l2 ...> in the A1 B1 A2 B2 ... ordering.
inline Eigen::Index basis_index(int d, const std::vector<std::pair<int, int>>& pairs) {
  Eigen::Index idx = 0;
  for (const auto& [k, l] : pairs) idx = (idx * d + k) * d + l;
  return idx;
}

// Min over every two-dimensional coordinate subspace of the 2x2
// compression's lowest eigenvalue (includes single basis vectors).
inline double min_over_basis_pairs(const CMat& w) {
  double best = w.diagonal().real().minCoeff();
  for (Eigen::Index u = 0; u < w.rows(); ++u)
    for (Eigen::Index v = u + 1; v < w.rows(); ++v) {
      const double p = w(u, u).real();
      const double q = w(v, v).real();
      const double off = std::abs(w(u, v));
      if (off == 0.0) continue;
      best = std::min(best, 0.5 * (p + q - std::sqrt((p - q) * (p - q) + 4 * off * off)));
    }
  return best;
}

inline double wrap_angle(double x) {
  const double two_pi = 2 * std::numbers::pi;
  x = std::fmod(x, two_pi);
  if (x < 0) x += two_pi;
  return x;
}

inline double angle_distance(double x, double y) {
  const double delta = wrap_angle(x - y);
  return std::min(delta, 2 * std::numbers::pi - delta);
}

}  // namespace nppt::testing
