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

#include "nppt/witness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "nppt/twirl.hpp"

namespace nppt {

namespace {

constexpr double kPairTolerance = 1e-10;

bool orthonormal_pair(const CMatrix& m) {
  if (m.cols() != 2) return false;
  const CMatrix gram = m.adjoint() * m;
  return (gram - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= kPairTolerance;
}

int single_copy_invariant_dim(const HermitianOperator& w) {
  if (w.dims().size() != 2) throw std::invalid_argument("expected a single-copy operator");
  const int d = canonical_local_dim(w.dims());
  if (!is_diagonal_invariant(w)) {
    throw std::invalid_argument("operator is not invariant under the diagonal twirl");
  }
  return d;
}

Index pair_index(int d, int i, int j) { return static_cast<Index>(i) * d + j; }

Index product_index(int d, const BasisProduct& phi) {
  Index flat = 0;
  for (const auto& [i, j] : phi) flat = flat * d * d + pair_index(d, i, j);
  return flat;
}

void check_basis(int d, const BasisProduct& phi) {
  for (const auto& [i, j] : phi) {
    if (i < 0 || i >= d || j < 0 || j >= d) throw std::invalid_argument("basis index out of range");
  }
}

// Superposition of at most two basis products of the current level.
struct Candidate {
  std::vector<std::pair<Complex, Index>> terms;
};

struct Level {
  double min_value;
  double max_value;
  Candidate argmin;
  Candidate argmax;
};

Candidate extend(const Candidate& c, Index d2, Index last) {
  Candidate out;
  for (const auto& [amp, idx] : c.terms) out.terms.emplace_back(amp, idx * d2 + last);
  return out;
}

// Eigenvector of [[a, c], [conj(c), b]] for eigenvalue lambda.
std::pair<Complex, Complex> eigvec2(double a, double b, Complex c, double lambda) {
  const Complex v1(c);
  const Complex v2(lambda - a);
  const Complex u1(lambda - b);
  const Complex u2(std::conj(c));
  const double nv = std::hypot(std::abs(v1), std::abs(v2));
  const double nu = std::hypot(std::abs(u1), std::abs(u2));
  if (nv >= nu && nv > 0.0) return {v1 / nv, v2 / nv};
  if (nu > 0.0) return {u1 / nu, u2 / nu};
  return {1.0, 0.0};
}

}  // namespace

SchmidtRank2Vector::SchmidtRank2Vector(BipartiteCut cut, CMatrix a_pair, CMatrix b_pair,
                                       CMatrix coeff)
    : cut_(std::move(cut)),
      a_pair_(std::move(a_pair)),
      b_pair_(std::move(b_pair)),
      coeff_(std::move(coeff)) {
  if (a_pair_.rows() != cut_.a_dim() || b_pair_.rows() != cut_.b_dim()) {
    throw std::invalid_argument("Schmidt pair does not match the cut dimensions");
  }
  if (!orthonormal_pair(a_pair_) || !orthonormal_pair(b_pair_)) {
    throw std::invalid_argument("Schmidt pairs must be orthonormal");
  }
  if (coeff_.rows() != 2 || coeff_.cols() != 2 ||
      std::abs(coeff_.norm() - 1.0) > kPairTolerance) {
    throw std::invalid_argument("coefficient matrix must be 2x2 with unit Frobenius norm");
  }
}

StateVector assemble(const SchmidtRank2Vector& v) {
  const CMatrix c = v.a_pair() * v.coeff() * v.b_pair().transpose();
  CVector flat = v.cut().flatten(c);
  flat /= flat.norm();
  return StateVector(v.cut().dims(), std::move(flat));
}

bool check_schwartz(const HermitianOperator& w, int k, int l) {
  if (w.dims().size() != 2) throw std::invalid_argument("expected a single-copy operator");
  const int d = canonical_local_dim(w.dims());
  if (k == l) throw std::invalid_argument("check_schwartz needs k != l");
  if (k < 0 || l < 0 || k >= d || l >= d) throw std::invalid_argument("index out of range");
  const double wkk = w(pair_index(d, k, k), pair_index(d, k, k)).real();
  const double wll = w(pair_index(d, l, l), pair_index(d, l, l)).real();
  const Complex wkl = w(pair_index(d, k, k), pair_index(d, l, l));
  return wkk >= 0.0 && wll >= 0.0 && std::norm(wkl) <= wkk * wll;
}

bool two_positive_closed_form(const HermitianOperator& w) {
  const int d = single_copy_invariant_dim(w);
  if ((w.matrix().diagonal().real().array() < 0.0).any()) return false;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const Index ii = pair_index(d, i, i);
      const Index jj = pair_index(d, j, j);
      const double det = w(ii, ii).real() * w(jj, jj).real() - std::norm(w(ii, jj));
      if (det < 0.0) return false;
    }
  }
  return true;
}

double typeII_expectation(const HermitianOperator& w, const BasisProduct& phi1,
                          const BasisProduct& phi2, int i, int j, Complex a, Complex b) {
  const int d = single_copy_invariant_dim(w);
  if (phi1.size() != phi2.size()) throw std::invalid_argument("phi1, phi2 copy count mismatch");
  check_basis(d, phi1);
  check_basis(d, phi2);
  if (i < 0 || j < 0 || i >= d || j >= d) throw std::invalid_argument("index out of range");
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-10) {
    throw std::invalid_argument("type-II coefficients must satisfy |a|^2 + |b|^2 = 1");
  }
  if (phi1 == phi2 && i == j) throw std::invalid_argument("type-II branches coincide");

  auto entry = [&](const BasisPair& r, const BasisPair& c) {
    return w(pair_index(d, r.first, r.second), pair_index(d, c.first, c.second));
  };
  Complex diag1 = entry({i, i}, {i, i});
  Complex diag2 = entry({j, j}, {j, j});
  Complex off = entry({i, i}, {j, j});
  for (std::size_t c = 0; c < phi1.size(); ++c) {
    diag1 *= entry(phi1[c], phi1[c]);
    diag2 *= entry(phi2[c], phi2[c]);
    off *= entry(phi1[c], phi2[c]);
  }
  return std::norm(a) * diag1.real() + std::norm(b) * diag2.real() +
         2.0 * (std::conj(a) * b * off).real();
}

StateVector type_ii_state(int d, const BasisProduct& phi1, const BasisProduct& phi2, int i, int j,
                          Complex a, Complex b) {
  if (phi1.size() != phi2.size()) throw std::invalid_argument("phi1, phi2 copy count mismatch");
  check_basis(d, phi1);
  check_basis(d, phi2);
  const int n = static_cast<int>(phi1.size()) + 1;
  Dims dims = canonical_dims(d, n);
  CVector v = CVector::Zero(product_dim(dims));
  BasisProduct b1 = phi1;
  BasisProduct b2 = phi2;
  b1.emplace_back(i, i);
  b2.emplace_back(j, j);
  v(product_index(d, b1)) += a;
  v(product_index(d, b2)) += b;
  return StateVector(std::move(dims), std::move(v));
}

ExtremalResult extremal_search(const HermitianOperator& w, int n) {
  const int d = single_copy_invariant_dim(w);
  if (n < 1) throw std::invalid_argument("copy count must be >= 1");
  const Dims dims = canonical_dims(d, n);
  product_dim(dims);
  const Index d2 = static_cast<Index>(d) * d;
  const CMatrix& w1 = w.matrix();

  Level level{1.0, 1.0, {{{1.0, 0}}}, {{{1.0, 0}}}};
  double type_ii_min = std::numeric_limits<double>::infinity();

  for (int m = 1; m <= n; ++m) {
    // (m-1)-copy operator; a 1x1 identity at m = 1.
    const CMatrix prev = (m == 1) ? CMatrix::Identity(1, 1) : tensor_power(w, m - 1).matrix();
    const Index states = prev.rows();
    Level next{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
               {}, {}};
    auto offer = [&next](double value, const Candidate& c) {
      if (value < next.min_value) {
        next.min_value = value;
        next.argmin = c;
      }
      if (value > next.max_value) {
        next.max_value = value;
        next.argmax = c;
      }
    };

    // Type-I: previous extremal (x) |e>.
    for (Index e = 0; e < d2; ++e) {
      const double de = w1(e, e).real();
      offer(de * level.min_value, extend(level.argmin, d2, e));
      offer(de * level.max_value, extend(level.argmax, d2, e));
    }

    // Type-II: a |phi1>|ii> + b |phi2>|jj>, i < j. phi1 != phi2 unless
    // there is only the empty product (m = 1).
    double level_type_ii = std::numeric_limits<double>::infinity();
    for (Index p1 = 0; p1 < states; ++p1) {
      for (Index p2 = 0; p2 < states; ++p2) {
        if (p1 == p2 && states > 1) continue;
        for (int i = 0; i < d; ++i) {
          for (int j = i + 1; j < d; ++j) {
            const Index ii = pair_index(d, i, i);
            const Index jj = pair_index(d, j, j);
            const double a = prev(p1, p1).real() * w1(ii, ii).real();
            const double b = prev(p2, p2).real() * w1(jj, jj).real();
            const Complex c = prev(p1, p2) * w1(ii, jj);
            const double mean = 0.5 * (a + b);
            const double radius = std::hypot(0.5 * (a - b), std::abs(c));
            const double lo = mean - radius;
            const double hi = mean + radius;
            level_type_ii = std::min(level_type_ii, lo);
            if (lo < next.min_value || hi > next.max_value) {
              const Index t1 = p1 * d2 + ii;
              const Index t2 = p2 * d2 + jj;
              if (lo < next.min_value) {
                const auto [x, y] = eigvec2(a, b, c, lo);
                offer(lo, Candidate{{{x, t1}, {y, t2}}});
              }
              if (hi > next.max_value) {
                const auto [x, y] = eigvec2(a, b, c, hi);
                offer(hi, Candidate{{{x, t1}, {y, t2}}});
              }
            }
          }
        }
      }
    }
    if (m == n) type_ii_min = level_type_ii;
    level = std::move(next);
  }

  CVector v = CVector::Zero(product_dim(dims));
  for (const auto& [amp, idx] : level.argmin.terms) v(idx) += amp;
  v /= v.norm();
  return {level.min_value, level.max_value, type_ii_min, StateVector(dims, std::move(v))};
}

double extremal_min(const HermitianOperator& w, int n) { return extremal_search(w, n).min_value; }

int ComparisonReport::converged_restarts() const {
  int count = 0;
  for (const auto& t : traces) count += t.converged ? 1 : 0;
  return count;
}

ComparisonReport compare(const HermitianOperator& w, int n, const SeesawConfig& cfg) {
  const ExtremalResult ext = extremal_search(w, n);
  const int d = canonical_local_dim(w.dims());

  const HermitianOperator power = tensor_power(w, n);
  const auto order = sides_major_order(power.dims());
  const HermitianOperator sorted = permute_copies(power, order);
  const BipartiteCut cut = BipartiteCut::by_side(sorted.dims());

  // B-side flattening is B1..Bn under both orderings, so the extremal
  // argmin's B support carries over unchanged.
  const auto schmidt = schmidt_decompose(ext.argmin, BipartiteCut::by_side(ext.argmin.dims()));
  const CMatrix warm = schmidt.b_basis.leftCols(2);

  SeesawResult res = seesaw_min(sorted, cut, cfg, std::span<const CMatrix>(&warm, 1));
  const double gap = res.min_value - ext.min_value;
  return ComparisonReport{d,
                          n,
                          res.min_value,
                          ext.min_value,
                          ext.type_ii_min,
                          gap,
                          gap < -kGapTolerance,
                          std::move(res.witness),
                          res.best_restart,
                          std::move(res.traces),
                          cfg.restarts,
                          cfg.seed};
}

}  // namespace nppt
