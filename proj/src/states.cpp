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

#include "nppt/states.hpp"

#include <cmath>
#include <numbers>

#include "random_util.hpp"

namespace nppt {

namespace {

Index pair_index(int d, int i, int j) { return static_cast<Index>(i) * d + j; }

std::string label(int i, int j) { return std::to_string(i + 1) + std::to_string(j + 1); }

void require_dim(int d) {
  if (d < 2) throw std::invalid_argument("local dimension must be >= 2");
  product_dim(bipartite_dims(d));
}

}  // namespace

WernerParams::WernerParams(int d, double alpha) : d_(d), alpha_(alpha) {
  require_dim(d);
  if (!std::isfinite(alpha) || alpha < -1.0 || alpha > 1.0) {
    throw std::invalid_argument("Werner alpha must lie in [-1, 1], got " + std::to_string(alpha));
  }
}

std::string_view to_string(WernerRegion region) {
  switch (region) {
    case WernerRegion::PptSeparable:
      return "PPT_SEPARABLE";
    case WernerRegion::NpptOneCopyUndistillable:
      return "NPPT_ONE_COPY_UNDISTILLABLE";
    case WernerRegion::NpptOneCopyDistillable:
      return "NPPT_ONE_COPY_DISTILLABLE";
  }
  return "UNKNOWN";
}

StateVector max_entangled(int d) {
  require_dim(d);
  CVector v = CVector::Zero(static_cast<Index>(d) * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) v(pair_index(d, k, k)) = amp;
  return StateVector(bipartite_dims(d), std::move(v));
}

HermitianOperator max_entangled_projector(int d) {
  require_dim(d);
  const Index n = static_cast<Index>(d) * d;
  CMatrix p = CMatrix::Zero(n, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(pair_index(d, i, i), pair_index(d, j, j)) = 1.0 / d;
  return HermitianOperator(bipartite_dims(d), std::move(p));
}

HermitianOperator swap_operator(int d) {
  require_dim(d);
  const Index n = static_cast<Index>(d) * d;
  CMatrix v = CMatrix::Zero(n, n);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) v(pair_index(d, l, k), pair_index(d, k, l)) = 1.0;
  return HermitianOperator(bipartite_dims(d), std::move(v));
}

HermitianOperator werner_pt(const WernerParams& p) {
  const int d = p.d();
  const double a = p.alpha();
  const Index n = static_cast<Index>(d) * d;
  CMatrix w = CMatrix::Identity(n, n);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Index r = pair_index(d, i, i);
      const Index c = pair_index(d, j, j);
      w(r, c) = (i == j) ? Complex(1.0 - a) : Complex(-a);
    }
  }
  return HermitianOperator(bipartite_dims(d), std::move(w));
}

HermitianOperator werner_state(const WernerParams& p) {
  return partial_transpose(werner_pt(p), Side::B);
}

WernerRegion classify_werner(const WernerParams& p) {
  const double a = p.alpha();
  if (a <= 1.0 / p.d()) return WernerRegion::PptSeparable;
  if (a <= 0.5) return WernerRegion::NpptOneCopyUndistillable;
  return WernerRegion::NpptOneCopyDistillable;
}

DiagonalInvariantPT::DiagonalInvariantPT(int d, RMatrix rho, CMatrix z)
    : d_(d), rho_(std::move(rho)), z_(std::move(z)) {
  require_dim(d);
  if (rho_.rows() != d || rho_.cols() != d || z_.rows() != d || z_.cols() != d) {
    throw std::invalid_argument("family parameters must be d x d");
  }
  if (!rho_.allFinite() || !z_.allFinite()) {
    throw std::invalid_argument("family parameters must be finite");
  }
  if ((z_ - z_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
    throw std::invalid_argument("z must satisfy z_ji = conj(z_ij)");
  }
  if (z_.diagonal().cwiseAbs().maxCoeff() > kHermitianTolerance) {
    throw std::invalid_argument("z must have a zero diagonal");
  }
  z_.diagonal().setZero();
}

DiagonalInvariantPT DiagonalInvariantPT::werner_embedding(const WernerParams& p) {
  const int d = p.d();
  RMatrix rho = RMatrix::Ones(d, d);
  rho.diagonal().setConstant(1.0 - p.alpha());
  CMatrix z = CMatrix::Constant(d, d, Complex(p.alpha()));
  z.diagonal().setZero();
  return DiagonalInvariantPT(d, std::move(rho), std::move(z));
}

CMatrix DiagonalInvariantPT::corr_block() const {
  CMatrix m = -z_;
  for (int i = 0; i < d_; ++i) m(i, i) = rho_(i, i);
  return m;
}

HermitianOperator family_pt(const DiagonalInvariantPT& fp) {
  const int d = fp.d();
  const Index n = static_cast<Index>(d) * d;
  const CMatrix m = fp.corr_block();
  CMatrix x = CMatrix::Zero(n, n);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i != j) x(pair_index(d, i, j), pair_index(d, i, j)) = fp.rho()(i, j);
      x(pair_index(d, i, i), pair_index(d, j, j)) = m(i, j);
    }
  }
  return HermitianOperator(bipartite_dims(d), std::move(x));
}

HermitianOperator family_state(const DiagonalInvariantPT& fp) {
  return partial_transpose(family_pt(fp), Side::B);
}

Validity family_is_valid_state(const DiagonalInvariantPT& fp) {
  Validity out;
  const int d = fp.d();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (!(fp.rho()(i, j) >= 0.0)) {
        out.valid = false;
        out.violations.push_back("rho_" + label(i, j) + " >= 0");
      }
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (!(fp.rho()(i, j) * fp.rho()(j, i) >= std::norm(fp.z()(i, j)))) {
        out.valid = false;
        out.violations.push_back("rho_" + label(i, j) + "*rho_" + label(j, i) + " >= |z_" +
                                 label(i, j) + "|^2");
      }
    }
  }
  return out;
}

bool family_is_nppt(const DiagonalInvariantPT& fp) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(fp.corr_block(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0) < -1e-10;
}

bool family_two_positive(const DiagonalInvariantPT& fp) {
  if (!((fp.rho().array() >= 0.0).all())) return false;
  const int d = fp.d();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (!(fp.rho()(i, i) * fp.rho()(j, j) >= std::norm(fp.z()(i, j)))) return false;
  return true;
}

DiagonalInvariantPT family_gauge_transform(const DiagonalInvariantPT& fp,
                                           std::span<const double> phases) {
  const int d = fp.d();
  if (phases.size() != static_cast<std::size_t>(d)) {
    throw std::invalid_argument("gauge transform needs d phases");
  }
  CMatrix z = fp.z();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      z(i, j) *= std::polar(1.0, phases[static_cast<std::size_t>(i)] -
                                     phases[static_cast<std::size_t>(j)]);
    }
  }
  // Restore exact Hermiticity lost to independent rounding of (i,j), (j,i).
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) z(j, i) = std::conj(z(i, j));
  return DiagonalInvariantPT(d, fp.rho(), std::move(z));
}

Complex cycle_product(const DiagonalInvariantPT& fp, int i, int j, int k) {
  return fp.z()(i, j) * fp.z()(j, k) * fp.z()(k, i);
}

DiagonalInvariantPT family_sample(std::uint64_t seed, int d, const FamilyConstraints& constraints) {
  require_dim(d);
  std::mt19937_64 rng(detail::derive_seed(seed, static_cast<std::uint64_t>(d)));
  for (int attempt = 0; attempt < kSamplerBudget; ++attempt) {
    RMatrix rho(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) rho(i, j) = detail::uniform01(rng);
    CMatrix z = CMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const double u = detail::uniform01(rng);
        const double phase = 2.0 * std::numbers::pi * detail::uniform01(rng);
        double modulus = u;
        if (constraints.zero_coherence) {
          modulus = 0.0;
        } else if (constraints.valid) {
          modulus = u * std::sqrt(rho(i, j) * rho(j, i));
        }
        z(i, j) = std::polar(modulus, phase);
        z(j, i) = std::conj(z(i, j));
      }
    }
    const double tr = rho.sum();
    if (!(tr > 0.0)) continue;
    DiagonalInvariantPT fp(d, rho / tr, z / tr);
    if (constraints.valid && !family_is_valid_state(fp).valid) continue;
    if (constraints.nppt && !family_is_nppt(fp)) continue;
    if (constraints.two_positive && !family_two_positive(fp)) continue;
    return fp;
  }
  throw SamplerExhausted("family_sample: no draw met the constraints within " +
                         std::to_string(kSamplerBudget) + " attempts");
}

}  // namespace nppt
