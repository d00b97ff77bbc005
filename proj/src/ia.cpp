// ofdma-ia-sim
// Copyright (C) 2026 The ofdma-ia-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include "ofdma/ia.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ofdma {

Pairing build_pairing(int n_subcarriers) {
  if (n_subcarriers <= 0 || n_subcarriers % 2 != 0) {
    throw std::invalid_argument("pairing requires even n_subcarriers");
  }
  Pairing p;
  p.n_subcarriers = n_subcarriers;
  const int half = n_subcarriers / 2;
  p.pairs.reserve(half);
  for (int i = 0; i < half; ++i) p.pairs.push_back({i, i + half});
  return p;
}

PairedChannelSet paired_channels(const ChannelTensor& tensor,
                                 const Pairing& pairing, int pair_index,
                                 const std::array<int, 3>& triple) {
  if (pairing.n_subcarriers != tensor.dims().n_subcarriers) {
    throw std::invalid_argument("pairing does not match tensor dimensions");
  }
  if (pair_index < 0 ||
      pair_index >= static_cast<int>(pairing.pairs.size())) {
    throw std::invalid_argument("pair_index out of range");
  }
  const auto& pr = pairing.pairs[pair_index];
  PairedChannelSet set;
  set.sigma2 = tensor.dims().noise_variance;
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      set.h[j][m][0] = tensor.at(j, m, triple[m], pr[0]);
      set.h[j][m][1] = tensor.at(j, m, triple[m], pr[1]);
    }
  }
  return set;
}

Eigen::Vector2cd least_eigvec_2x2(const Eigen::Matrix2cd& q) {
  const double a = q(0, 0).real();
  const double c = q(1, 1).real();
  const Complex b = q(0, 1);
  const double tol = 1e-10 * std::max({std::abs(a), std::abs(c), 1.0});
  if (std::abs(q(1, 0) - std::conj(b)) > tol ||
      std::abs(q(0, 0).imag()) > tol || std::abs(q(1, 1).imag()) > tol) {
    throw std::invalid_argument("least_eigvec_2x2: matrix is not Hermitian");
  }
  const double half = 0.5 * (a - c);
  const double disc = std::sqrt(half * half + std::norm(b));
  const double lam = 0.5 * (a + c) - disc;

  // Two algebraic eigenvector forms; take the better-conditioned one.
  const Eigen::Vector2cd x1(b, Complex(lam - a, 0.0));
  const Eigen::Vector2cd x2(Complex(lam - c, 0.0), std::conj(b));
  Eigen::Vector2cd x = x1.squaredNorm() >= x2.squaredNorm() ? x1 : x2;

  const double scale = std::max({std::abs(a), std::abs(c), 1.0});
  if (x.norm() <= 1e-14 * scale) {
    // q is (numerically) a multiple of the identity; any direction works.
    x = Eigen::Vector2cd(1.0, 0.0);
  }
  x.normalize();

  // Fixed phase: first significant component real and nonnegative.
  for (int i = 0; i < 2; ++i) {
    const double mag = std::abs(x[i]);
    if (mag > 1e-12) {
      x *= std::conj(x[i]) / mag;
      break;
    }
  }
  return x;
}

double interference_leakage(const PairedChannelSet& ch,
                            const std::array<Eigen::Vector2cd, kNumCells>& v,
                            const std::array<Eigen::Vector2cd, kNumCells>& u) {
  double total = 0.0;
  for (int m = 0; m < kNumCells; ++m) {
    for (int j = 0; j < kNumCells; ++j) {
      if (j == m) continue;
      const Complex t = u[m].dot(ch.h[j][m].cwiseProduct(v[j]));
      total += std::norm(t);
    }
  }
  return total;
}

namespace {

Eigen::Matrix3cd effective_matrix(
    const PairedChannelSet& ch,
    const std::array<Eigen::Vector2cd, kNumCells>& v,
    const std::array<Eigen::Vector2cd, kNumCells>& u) {
  Eigen::Matrix3cd eff;
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      eff(j, m) = u[m].dot(ch.h[j][m].cwiseProduct(v[j]));
    }
  }
  return eff;
}

// Rate proxy at a fixed per-stream power, residual interference included.
double utility_proxy(const Eigen::Matrix3cd& eff, double sigma2, double p) {
  double util = 0.0;
  for (int m = 0; m < kNumCells; ++m) {
    double interf = 0.0;
    for (int j = 0; j < kNumCells; ++j) {
      if (j != m) interf += p * std::norm(eff(j, m)) / sigma2;
    }
    const double sig = p * std::norm(eff(m, m)) / sigma2;
    util += std::log2(1.0 + sig / (1.0 + interf));
  }
  return util;
}

// Unit-norm (M^-1) d for Hermitian positive definite 2x2 M, with the same
// phase convention as least_eigvec_2x2.
Eigen::Vector2cd mmse_direction(const Eigen::Matrix2cd& mat,
                                const Eigen::Vector2cd& d) {
  const double a = mat(0, 0).real();
  const double c = mat(1, 1).real();
  const Complex b = mat(0, 1);
  const double det = a * c - std::norm(b);
  Eigen::Vector2cd x = d;
  if (det > 0.0 && std::isfinite(det)) {
    x[0] = (c * d[0] - b * d[1]) / det;
    x[1] = (a * d[1] - std::conj(b) * d[0]) / det;
  }
  if (x.norm() <= 1e-300) x = Eigen::Vector2cd(1.0, 0.0);
  x.normalize();
  for (int i = 0; i < 2; ++i) {
    const double mag = std::abs(x[i]);
    if (mag > 1e-12) {
      x *= std::conj(x[i]) / mag;
      break;
    }
  }
  return x;
}

struct ProxyTracker {
  double proxy = -std::numeric_limits<double>::infinity();
  IaOperatingPoint pt;
};

void track(ProxyTracker& t, const PairedChannelSet& ch,
           const std::array<Eigen::Vector2cd, kNumCells>& v,
           const std::array<Eigen::Vector2cd, kNumCells>& u, double power) {
  const Eigen::Matrix3cd eff = effective_matrix(ch, v, u);
  const double proxy = utility_proxy(eff, ch.sigma2, power);
  if (proxy > t.proxy) {
    t.proxy = proxy;
    t.pt.v = v;
    t.pt.u = u;
    t.pt.effective = eff;
    t.pt.leakage = interference_leakage(ch, v, u);
  }
}

// Solves (A + mu I) x = b with the smallest mu >= 0 keeping |x| <= 1.
Eigen::Vector2cd ridge_solve_unit(const Eigen::Matrix2cd& A,
                                  const Eigen::Vector2cd& b) {
  auto solve = [&](double mu) -> Eigen::Vector2cd {
    const double a = A(0, 0).real() + mu;
    const double c = A(1, 1).real() + mu;
    const Complex off = A(0, 1);
    const double det = a * c - std::norm(off);
    if (!(det > 0.0) || !std::isfinite(det)) return Eigen::Vector2cd::Zero();
    return Eigen::Vector2cd((c * b[0] - off * b[1]) / det,
                            (a * b[1] - std::conj(off) * b[0]) / det);
  };
  Eigen::Vector2cd x = solve(0.0);
  if (x.norm() <= 1.0 && x.norm() > 0.0) return x;
  double lo = 0.0;
  double hi = std::max(b.norm(), 1e-30);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (solve(mid).norm() > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  x = solve(hi);
  if (!(x.norm() > 0.0)) x = Eigen::Vector2cd(1.0, 0.0);
  return x;
}

// One weighted-MMSE sweep at per-stream power p. Unlike the max-SINR
// update this targets a stationary point of the sum rate itself, which is
// where the mid-power compromises live. Precoders may shrink below unit
// norm; that is per-stream power backoff and the rate proxy accounts it.
void wmmse_sweep(const PairedChannelSet& ch, double p,
                 std::array<Eigen::Vector2cd, kNumCells>& v,
                 std::array<Eigen::Vector2cd, kNumCells>& u) {
  const double sp = std::sqrt(p);
  std::array<Eigen::Vector2cd, kNumCells> rx;
  std::array<double, kNumCells> omega;
  for (int m = 0; m < kNumCells; ++m) {
    Eigen::Matrix2cd cov = ch.sigma2 * Eigen::Matrix2cd::Identity();
    for (int j = 0; j < kNumCells; ++j) {
      const Eigen::Vector2cd w = ch.h[j][m].cwiseProduct(v[j]);
      cov += p * w * w.adjoint();
    }
    const Eigen::Vector2cd own = ch.h[m][m].cwiseProduct(v[m]);
    const double a = cov(0, 0).real();
    const double c = cov(1, 1).real();
    const Complex off = cov(0, 1);
    const double det = a * c - std::norm(off);
    Eigen::Vector2cd sol = Eigen::Vector2cd::Zero();
    if (det > 0.0 && std::isfinite(det)) {
      sol[0] = (c * own[0] - off * own[1]) / det;
      sol[1] = (a * own[1] - std::conj(off) * own[0]) / det;
    }
    rx[m] = sp * sol;
    const double mse =
        std::max(1.0 - p * own.dot(sol).real(), 1e-12);
    omega[m] = 1.0 / mse;
  }
  for (int j = 0; j < kNumCells; ++j) {
    Eigen::Matrix2cd A = Eigen::Matrix2cd::Zero();
    for (int m = 0; m < kNumCells; ++m) {
      const Eigen::Vector2cd t = ch.h[j][m].conjugate().cwiseProduct(rx[m]);
      A += omega[m] * p * t * t.adjoint();
    }
    const Eigen::Vector2cd bj =
        omega[j] * sp * ch.h[j][j].conjugate().cwiseProduct(rx[j]);
    v[j] = ridge_solve_unit(A, bj);
  }
  for (int m = 0; m < kNumCells; ++m) {
    if (rx[m].norm() > 0.0) {
      u[m] = rx[m].normalized();
    } else {
      u[m] = Eigen::Vector2cd(1.0, 0.0);
    }
  }
}

// Precoders packed as 12 reals; filters are closed-form MMSE, so the
// proxy is a function of the precoders alone.
std::array<Eigen::Vector2cd, kNumCells> unpack_v(const double* x) {
  std::array<Eigen::Vector2cd, kNumCells> v;
  for (int m = 0; m < kNumCells; ++m) {
    v[m] = Eigen::Vector2cd(Complex(x[4 * m], x[4 * m + 1]),
                            Complex(x[4 * m + 2], x[4 * m + 3]));
    const double n = v[m].norm();
    if (n > 1.0) {
      v[m] /= n;
    } else if (n <= 1e-300) {
      v[m] = Eigen::Vector2cd(1.0, 0.0);
    }
  }
  return v;
}

std::array<Eigen::Vector2cd, kNumCells> mmse_filters(
    const PairedChannelSet& ch, double p,
    const std::array<Eigen::Vector2cd, kNumCells>& v) {
  std::array<Eigen::Vector2cd, kNumCells> u;
  for (int m = 0; m < kNumCells; ++m) {
    Eigen::Matrix2cd mat = ch.sigma2 * Eigen::Matrix2cd::Identity();
    for (int j = 0; j < kNumCells; ++j) {
      if (j == m) continue;
      const Eigen::Vector2cd w = ch.h[j][m].cwiseProduct(v[j]);
      mat += p * w * w.adjoint();
    }
    u[m] = mmse_direction(mat, ch.h[m][m].cwiseProduct(v[m]));
  }
  return u;
}

// Fixed-iteration Nelder-Mead ascent of the proxy over the packed
// precoders. Deterministic: fixed init offsets, fixed iteration count.
void polish_point(const PairedChannelSet& ch, double p, int iters,
                  ProxyTracker& t) {
  constexpr int kDim = 12;
  if (iters <= 0) return;
  auto eval = [&](const std::array<double, kDim>& x) {
    const auto v = unpack_v(x.data());
    const auto u = mmse_filters(ch, p, v);
    return utility_proxy(effective_matrix(ch, v, u), ch.sigma2, p);
  };

  std::array<std::array<double, kDim>, kDim + 1> xs;
  std::array<double, kDim + 1> fs;
  for (int m = 0; m < kNumCells; ++m) {
    xs[0][4 * m] = t.pt.v[m][0].real();
    xs[0][4 * m + 1] = t.pt.v[m][0].imag();
    xs[0][4 * m + 2] = t.pt.v[m][1].real();
    xs[0][4 * m + 3] = t.pt.v[m][1].imag();
  }
  fs[0] = eval(xs[0]);
  for (int i = 1; i <= kDim; ++i) {
    xs[i] = xs[0];
    xs[i][i - 1] += 0.2;
    fs[i] = eval(xs[i]);
  }

  auto order = [&] {
    for (int i = 0; i <= kDim; ++i) {
      for (int j = i + 1; j <= kDim; ++j) {
        if (fs[j] > fs[i]) {
          std::swap(fs[i], fs[j]);
          std::swap(xs[i], xs[j]);
        }
      }
    }
  };
  order();

  for (int it = 0; it < iters; ++it) {
    std::array<double, kDim> centroid{};
    for (int i = 0; i < kDim; ++i) {
      for (int d = 0; d < kDim; ++d) centroid[d] += xs[i][d] / kDim;
    }
    auto blend = [&](double coef) {
      std::array<double, kDim> x;
      for (int d = 0; d < kDim; ++d) {
        x[d] = centroid[d] + coef * (centroid[d] - xs[kDim][d]);
      }
      return x;
    };
    const auto refl = blend(1.0);
    const double f_refl = eval(refl);
    if (f_refl > fs[0]) {
      const auto expa = blend(2.0);
      const double f_expa = eval(expa);
      if (f_expa > f_refl) {
        xs[kDim] = expa;
        fs[kDim] = f_expa;
      } else {
        xs[kDim] = refl;
        fs[kDim] = f_refl;
      }
    } else if (f_refl > fs[kDim - 1]) {
      xs[kDim] = refl;
      fs[kDim] = f_refl;
    } else {
      const auto contr = blend(-0.5);
      const double f_contr = eval(contr);
      if (f_contr > fs[kDim]) {
        xs[kDim] = contr;
        fs[kDim] = f_contr;
      } else {
        for (int i = 1; i <= kDim; ++i) {
          for (int d = 0; d < kDim; ++d) {
            xs[i][d] = 0.5 * (xs[i][d] + xs[0][d]);
          }
          fs[i] = eval(xs[i]);
        }
      }
    }
    order();
  }

  const auto v = unpack_v(xs[0].data());
  const auto u = mmse_filters(ch, p, v);
  track(t, ch, v, u, p);
}

// One max-SINR sweep at per-stream power p: MMSE receive filters forward,
// MMSE precoders in the reciprocal network.
void max_sinr_sweep(const PairedChannelSet& ch, double p,
                    std::array<Eigen::Vector2cd, kNumCells>& v,
                    std::array<Eigen::Vector2cd, kNumCells>& u) {
  for (int m = 0; m < kNumCells; ++m) {
    Eigen::Matrix2cd mat = ch.sigma2 * Eigen::Matrix2cd::Identity();
    for (int j = 0; j < kNumCells; ++j) {
      if (j == m) continue;
      const Eigen::Vector2cd w = ch.h[j][m].cwiseProduct(v[j]);
      mat += p * w * w.adjoint();
    }
    u[m] = mmse_direction(mat, ch.h[m][m].cwiseProduct(v[m]));
  }
  for (int m = 0; m < kNumCells; ++m) {
    Eigen::Matrix2cd mat = ch.sigma2 * Eigen::Matrix2cd::Identity();
    for (int j = 0; j < kNumCells; ++j) {
      if (j == m) continue;
      const Eigen::Vector2cd z = ch.h[m][j].conjugate().cwiseProduct(u[j]);
      mat += p * z * z.adjoint();
    }
    v[m] = mmse_direction(mat, ch.h[m][m].conjugate().cwiseProduct(u[m]));
  }
}

}  // namespace

std::vector<IaOperatingPoint> ia_operating_points(const PairedChannelSet& ch,
                                                  const IaOptions& opts) {
  if (opts.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  std::vector<double> powers = opts.snapshot_powers;
  if (powers.empty()) powers.push_back(opts.reference_power);
  std::vector<ProxyTracker> trackers(powers.size());

  std::array<Eigen::Vector2cd, kNumCells> v;
  std::array<Eigen::Vector2cd, kNumCells> u;
  const double r = 1.0 / std::sqrt(2.0);
  for (int m = 0; m < kNumCells; ++m) v[m] = Eigen::Vector2cd(r, r);

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    if (iter > 0) {
      for (int m = 0; m < kNumCells; ++m) {
        Eigen::Matrix2cd q = Eigen::Matrix2cd::Zero();
        for (int j = 0; j < kNumCells; ++j) {
          if (j == m) continue;
          const Eigen::Vector2cd t = ch.h[m][j].conjugate().cwiseProduct(u[j]);
          q += t * t.adjoint();
        }
        v[m] = least_eigvec_2x2(q);
      }
    }
    for (int m = 0; m < kNumCells; ++m) {
      Eigen::Matrix2cd q = Eigen::Matrix2cd::Zero();
      for (int j = 0; j < kNumCells; ++j) {
        if (j == m) continue;
        const Eigen::Vector2cd t = ch.h[j][m].cwiseProduct(v[j]);
        q += t * t.adjoint();
      }
      u[m] = least_eigvec_2x2(q);
    }
    for (size_t i = 0; i < powers.size(); ++i) {
      track(trackers[i], ch, v, u, powers[i]);
    }
    if (interference_leakage(ch, v, u) <= opts.leakage_tol) break;
  }

  // Keep the per-power descent snapshots as standalone candidates: the
  // refinement below trades leakage for direct gain, and budgets where
  // residual interference dominates want the low-leakage points back.
  std::vector<IaOperatingPoint> path_pts(powers.size());
  for (size_t i = 0; i < powers.size(); ++i) path_pts[i] = trackers[i].pt;

  // Subcarrier-assignment configurations: each stream rides one side of
  // the pair. On diagonal channels these are the extreme points the
  // iterations miss, and at high power the best of them is often optimal.
  std::array<IaOperatingPoint, 8> assign;
  for (int mask = 0; mask < 8; ++mask) {
    IaOperatingPoint& pt = assign[mask];
    for (int m = 0; m < kNumCells; ++m) {
      const int side = (mask >> m) & 1;
      pt.v[m] = Eigen::Vector2cd::Zero();
      pt.v[m][side] = 1.0;
      pt.u[m] = pt.v[m];
    }
    pt.effective = effective_matrix(ch, pt.v, pt.u);
    pt.leakage = interference_leakage(ch, pt.v, pt.u);
  }

  // Silent-cell configurations: one stream off, the other two on chosen
  // sides. Opposite sides give exactly zero cross interference, so these
  // points trade the third stream for alignment that is exact.
  std::vector<IaOperatingPoint> silent;
  silent.reserve(12);
  for (int off = 0; off < kNumCells; ++off) {
    for (int mask = 0; mask < 4; ++mask) {
      IaOperatingPoint pt;
      int bit = 0;
      for (int m = 0; m < kNumCells; ++m) {
        if (m == off) {
          pt.v[m] = Eigen::Vector2cd::Zero();
        } else {
          const int side = (mask >> bit++) & 1;
          pt.v[m] = Eigen::Vector2cd::Zero();
          pt.v[m][side] = 1.0;
        }
        pt.u[m] = pt.v[m];
      }
      // The silent receiver is unconstrained; pick the filter that
      // minimizes its measured incoming interference.
      Eigen::Matrix2cd q = Eigen::Matrix2cd::Zero();
      for (int j = 0; j < kNumCells; ++j) {
        if (j == off) continue;
        const Eigen::Vector2cd t = ch.h[j][off].cwiseProduct(pt.v[j]);
        q += t * t.adjoint();
      }
      pt.u[off] = least_eigvec_2x2(q);
      pt.effective = effective_matrix(ch, pt.v, pt.u);
      pt.leakage = interference_leakage(ch, pt.v, pt.u);
      silent.push_back(pt);
    }
  }

  std::vector<IaOperatingPoint> out;
  out.reserve(2 * powers.size() + assign.size() + silent.size());
  for (size_t i = 0; i < powers.size(); ++i) {
    const double p = powers[i];
    // Refine from several bases per power: max-SINR from the descent
    // snapshot, then weighted-MMSE (a sum-rate stationary iteration) from
    // the snapshot, the balanced init, and the best assignment extreme.
    std::array<Eigen::Vector2cd, kNumCells> vv;
    std::array<Eigen::Vector2cd, kNumCells> uu;
    if (opts.max_sinr_iters > 0) {
      vv = trackers[i].pt.v;
      uu = trackers[i].pt.u;
      for (int it = 0; it < opts.max_sinr_iters; ++it) {
        max_sinr_sweep(ch, p, vv, uu);
        track(trackers[i], ch, vv, uu, p);
      }
      const IaOperatingPoint* best_assign = &assign[0];
      double best_assign_proxy = -std::numeric_limits<double>::infinity();
      for (const IaOperatingPoint& pt : assign) {
        const double pr = utility_proxy(pt.effective, ch.sigma2, p);
        if (pr > best_assign_proxy) {
          best_assign_proxy = pr;
          best_assign = &pt;
        }
      }
      for (int start = 0; start < 3; ++start) {
        if (start == 0) {
          vv = trackers[i].pt.v;
          uu = trackers[i].pt.u;
        } else if (start == 1) {
          for (int m = 0; m < kNumCells; ++m) {
            vv[m] = Eigen::Vector2cd(r, r);
            uu[m] = Eigen::Vector2cd(r, r);
          }
        } else {
          vv = best_assign->v;
          uu = best_assign->u;
        }
        for (int it = 0; it < opts.max_sinr_iters; ++it) {
          wmmse_sweep(ch, p, vv, uu);
          track(trackers[i], ch, vv, uu, p);
        }
      }
    }
    polish_point(ch, p, opts.polish_iters, trackers[i]);
    out.push_back(trackers[i].pt);
    if (trackers[i].pt.leakage > path_pts[i].leakage) {
      out.push_back(path_pts[i]);
    }
  }
  for (const IaOperatingPoint& pt : assign) out.push_back(pt);
  for (const IaOperatingPoint& pt : silent) out.push_back(pt);
  return out;
}

IaSolution distributed_ia(const PairedChannelSet& ch, const IaOptions& opts) {
  if (opts.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

  std::array<Eigen::Vector2cd, kNumCells> v;
  std::array<Eigen::Vector2cd, kNumCells> u;
  const double r = 1.0 / std::sqrt(2.0);
  for (int m = 0; m < kNumCells; ++m) v[m] = Eigen::Vector2cd(r, r);

  IaSolution best;
  double best_proxy = -1.0;
  IaSolution sol;
  sol.history.reserve(opts.max_iters);

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    if (iter > 0) {
      // Reverse: precoders minimize leakage in the reciprocal network,
      // whose channels are the adjoints of the forward ones.
      for (int m = 0; m < kNumCells; ++m) {
        Eigen::Matrix2cd q = Eigen::Matrix2cd::Zero();
        for (int j = 0; j < kNumCells; ++j) {
          if (j == m) continue;
          const Eigen::Vector2cd t = ch.h[m][j].conjugate().cwiseProduct(u[j]);
          q += t * t.adjoint();
        }
        v[m] = least_eigvec_2x2(q);
      }
    }

    // Forward: receive filters minimize leakage given the precoders.
    for (int m = 0; m < kNumCells; ++m) {
      Eigen::Matrix2cd q = Eigen::Matrix2cd::Zero();
      for (int j = 0; j < kNumCells; ++j) {
        if (j == m) continue;
        const Eigen::Vector2cd t = ch.h[j][m].cwiseProduct(v[j]);
        q += t * t.adjoint();
      }
      u[m] = least_eigvec_2x2(q);
    }

    const double leak = interference_leakage(ch, v, u);
    sol.history.push_back(leak);
    sol.iterations = iter + 1;

    if (opts.select == IaSelect::kBestUtility) {
      const Eigen::Matrix3cd eff = effective_matrix(ch, v, u);
      const double proxy =
          utility_proxy(eff, ch.sigma2, opts.reference_power);
      if (proxy > best_proxy) {
        best_proxy = proxy;
        best.v = v;
        best.u = u;
        best.effective = eff;
        best.leakage = leak;
      }
    }

    if (leak <= opts.leakage_tol) break;
  }

  if (opts.select == IaSelect::kBestUtility) {
    best.history = std::move(sol.history);
    best.iterations = sol.iterations;
    sol = std::move(best);
  } else {
    sol.v = v;
    sol.u = u;
    sol.effective = effective_matrix(ch, v, u);
    sol.leakage = sol.history.back();
  }
  return sol;
}

Eigen::Matrix3d effective_link_gains(const PairedChannelSet& ch,
                                     const IaSolution& sol) {
  Eigen::Matrix3d g;
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      g(j, m) = std::norm(sol.effective(j, m)) / ch.sigma2;
    }
  }
  return g;
}

}  // namespace ofdma
