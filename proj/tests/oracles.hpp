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

// Brute-force reference implementations the tests compare against. These
// trade speed for obvious correctness: plain grids, bisection, and direct
// formula evaluation, sharing no solver code with the library.

#ifndef OFDMA_TESTS_ORACLES_HPP
#define OFDMA_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "ofdma/alloc.hpp"
#include "ofdma/channel.hpp"
#include "ofdma/ia.hpp"

namespace ofdma::oracle {

inline constexpr double kLn2 = 0.6931471805599453;

// Per-slot Lagrangian sum_m w_m (1/N) log2(1+sinr_m) - lambda_m p_m for a
// fixed user triple, evaluated from scratch.
inline double slot_lagrangian(const Eigen::Matrix3d& g,
                              const Eigen::Vector3d& w,
                              const Eigen::Vector3d& lambda,
                              const Eigen::Vector3d& p, int n_sc) {
  double f = 0.0;
  for (int m = 0; m < 3; ++m) {
    double interf = 1.0;
    for (int j = 0; j < 3; ++j) {
      if (j != m) interf += p[j] * g(j, m);
    }
    const double sinr = p[m] * g(m, m) / interf;
    f += w[m] * std::log1p(sinr) / (n_sc * kLn2) - lambda[m] * p[m];
  }
  return f;
}

// Exhaustive grid over p in [0, cap]^3 followed by shrinking local grids
// around the incumbent. Returns the best Lagrangian value found.
inline double grid3_lagrangian_max(const Eigen::Matrix3d& g,
                                   const Eigen::Vector3d& w,
                                   const Eigen::Vector3d& lambda,
                                   const Eigen::Vector3d& cap, int n_sc,
                                   int coarse_levels = 200,
                                   int refine_rounds = 3) {
  Eigen::Vector3d best = Eigen::Vector3d::Zero();
  double best_f = slot_lagrangian(g, w, lambda, best, n_sc);
  Eigen::Vector3d lo = Eigen::Vector3d::Zero();
  Eigen::Vector3d hi = cap;
  int levels = coarse_levels;
  for (int round = 0; round <= refine_rounds; ++round) {
    Eigen::Vector3d step = (hi - lo) / levels;
    Eigen::Vector3d p;
    for (int i = 0; i <= levels; ++i) {
      p[0] = lo[0] + i * step[0];
      for (int j = 0; j <= levels; ++j) {
        p[1] = lo[1] + j * step[1];
        for (int k = 0; k <= levels; ++k) {
          p[2] = lo[2] + k * step[2];
          const double f = slot_lagrangian(g, w, lambda, p, n_sc);
          if (f > best_f) {
            best_f = f;
            best = p;
          }
        }
      }
    }
    for (int m = 0; m < 3; ++m) {
      const double s = 2.0 * step[m];
      lo[m] = std::max(0.0, best[m] - s);
      hi[m] = std::min(cap[m], best[m] + s);
    }
    levels = 40;
  }
  return best_f;
}

// Joint sum-rate maximization for N subcarriers and one user per cell by
// enumerating per-BS budget splits on a simplex grid, then shrinking the
// box around the best split. gains[n](j, m) are the normalized link gains
// of subcarrier n. Only practical for N = 2.
inline double joint_grid_sum_rate_n2(const std::array<Eigen::Matrix3d, 2>& g,
                                     const Eigen::Vector3d& p_tot,
                                     int coarse_levels = 24,
                                     int refine_rounds = 6) {
  auto sum_rate = [&](const Eigen::Matrix<double, 3, 2>& pw) {
    double r = 0.0;
    for (int n = 0; n < 2; ++n) {
      for (int m = 0; m < 3; ++m) {
        double interf = 1.0;
        for (int j = 0; j < 3; ++j) {
          if (j != m) interf += pw(j, n) * g[n](j, m);
        }
        r += std::log1p(pw(m, n) * g[n](m, m) / interf) / (2.0 * kLn2);
      }
    }
    return r;
  };

  // pw(m, n): power of BS m on subcarrier n, pw(m,0)+pw(m,1) <= p_tot[m].
  using Split = Eigen::Matrix<double, 3, 2>;
  Split lo = Split::Zero();
  Split hi;
  for (int m = 0; m < 3; ++m) hi.row(m).setConstant(p_tot[m]);
  Split best = Split::Zero();
  double best_r = sum_rate(best);
  int levels = coarse_levels;

  for (int round = 0; round <= refine_rounds; ++round) {
    std::array<std::vector<Eigen::Vector2d>, 3> splits;
    for (int m = 0; m < 3; ++m) {
      const double s0 = (hi(m, 0) - lo(m, 0)) / levels;
      const double s1 = (hi(m, 1) - lo(m, 1)) / levels;
      for (int i = 0; i <= levels; ++i) {
        for (int j = 0; j <= levels; ++j) {
          const Eigen::Vector2d p(lo(m, 0) + i * s0, lo(m, 1) + j * s1);
          if (p.sum() <= p_tot[m] * (1.0 + 1e-12)) splits[m].push_back(p);
        }
      }
    }
    Split pw;
    for (const auto& p0 : splits[0]) {
      pw.row(0) = p0.transpose();
      for (const auto& p1 : splits[1]) {
        pw.row(1) = p1.transpose();
        for (const auto& p2 : splits[2]) {
          pw.row(2) = p2.transpose();
          const double r = sum_rate(pw);
          if (r > best_r) {
            best_r = r;
            best = pw;
          }
        }
      }
    }
    for (int m = 0; m < 3; ++m) {
      for (int n = 0; n < 2; ++n) {
        const double s = 2.0 * (hi(m, n) - lo(m, n)) / levels;
        lo(m, n) = std::max(0.0, best(m, n) - s);
        hi(m, n) = std::min(p_tot[m], best(m, n) + s);
      }
    }
    levels = 10;
  }
  return best_r;
}

// Leakage for precoders parameterized by angles, with each receive filter
// set to the least eigenvector of its incoming interference covariance
// (the leakage-optimal filter given the precoders).
inline double leakage_at_angles(const PairedChannelSet& ch,
                                const std::array<double, 6>& ang) {
  std::array<Eigen::Vector2cd, 3> v;
  for (int m = 0; m < 3; ++m) {
    const double t = ang[2 * m];
    const double ph = ang[2 * m + 1];
    v[m] = Eigen::Vector2cd(std::cos(t),
                            std::sin(t) * std::exp(Complex(0.0, ph)));
  }
  double total = 0.0;
  for (int m = 0; m < 3; ++m) {
    Eigen::Matrix2cd q = Eigen::Matrix2cd::Zero();
    for (int j = 0; j < 3; ++j) {
      if (j == m) continue;
      const Eigen::Vector2cd t = ch.h[j][m].cwiseProduct(v[j]);
      q += t * t.adjoint();
    }
    // Smallest eigenvalue of a 2x2 Hermitian matrix, directly.
    const double a = q(0, 0).real();
    const double c = q(1, 1).real();
    const double half = 0.5 * (a - c);
    total += 0.5 * (a + c) - std::sqrt(half * half + std::norm(q(0, 1)));
  }
  return total;
}

// Global leakage minimum by exhaustive search over precoder angles
// (theta in [0, pi/2], phase in [0, 2 pi) per cell) plus cyclic coordinate
// refinement with shrinking steps.
inline double angle_grid_min_leakage(const PairedChannelSet& ch,
                                     int points_per_angle = 14,
                                     int refine_rounds = 60) {
  const double pi = std::acos(-1.0);
  std::array<double, 6> best{};
  double best_leak = leakage_at_angles(ch, best);
  std::array<double, 6> ang{};
  const int pt = points_per_angle;
  std::array<int, 6> idx{};
  for (idx[0] = 0; idx[0] < pt; ++idx[0]) {
    for (idx[1] = 0; idx[1] < pt; ++idx[1]) {
      for (idx[2] = 0; idx[2] < pt; ++idx[2]) {
        for (idx[3] = 0; idx[3] < pt; ++idx[3]) {
          for (idx[4] = 0; idx[4] < pt; ++idx[4]) {
            for (idx[5] = 0; idx[5] < pt; ++idx[5]) {
              for (int d = 0; d < 6; ++d) {
                const double span = (d % 2 == 0) ? 0.5 * pi : 2.0 * pi;
                ang[d] = idx[d] * span / pt;
              }
              const double l = leakage_at_angles(ch, ang);
              if (l < best_leak) {
                best_leak = l;
                best = ang;
              }
            }
          }
        }
      }
    }
  }

  std::array<double, 6> step;
  for (int d = 0; d < 6; ++d) {
    step[d] = ((d % 2 == 0) ? 0.5 * pi : 2.0 * pi) / pt;
  }
  for (int round = 0; round < refine_rounds; ++round) {
    for (int d = 0; d < 6; ++d) {
      for (const double sgn : {-1.0, 1.0}) {
        std::array<double, 6> cand = best;
        cand[d] += sgn * step[d];
        const double l = leakage_at_angles(ch, cand);
        if (l < best_leak) {
          best_leak = l;
          best = cand;
        }
      }
      step[d] *= 0.7;
    }
  }
  return best_leak;
}

// Sum of three independent single-cell solutions: per subcarrier the best
// direct gain over that cell's users, then water-filling by bisection on
// the water level until the budget is met.
inline double independent_waterfill_sum_rate(const ChannelTensor& tensor,
                                             const Eigen::Vector3d& p_tot) {
  const auto& d = tensor.dims();
  double total = 0.0;
  for (int m = 0; m < 3; ++m) {
    std::vector<double> g(d.n_subcarriers);
    for (int n = 0; n < d.n_subcarriers; ++n) {
      double best = 0.0;
      for (int k = 0; k < d.users_per_cell; ++k) {
        best = std::max(best, tensor.gain(m, m, k, n));
      }
      g[n] = best;
    }
    if (p_tot[m] <= 0.0) continue;
    auto used = [&](double level) {
      double s = 0.0;
      for (const double gn : g) {
        if (gn > 0.0) s += std::max(0.0, level - 1.0 / gn);
      }
      return s;
    };
    double lo = 0.0;
    double hi = p_tot[m] + 1.0;
    for (const double gn : g) {
      if (gn > 0.0) hi = std::max(hi, p_tot[m] + 1.0 / gn);
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (used(mid) > p_tot[m] ? hi : lo) = mid;
    }
    const double level = 0.5 * (lo + hi);
    for (const double gn : g) {
      if (gn <= 0.0) continue;
      const double p = std::max(0.0, level - 1.0 / gn);
      total += std::log1p(p * gn) / (d.n_subcarriers * kLn2);
    }
  }
  return total;
}

// Kolmogorov-Smirnov statistic against the unit-mean exponential CDF.
inline double ks_stat_exp1(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = 1.0 - std::exp(-samples[i]);
    const double lo = i / n;
    const double hi = (i + 1) / n;
    d = std::max({d, std::abs(cdf - lo), std::abs(cdf - hi)});
  }
  return d;
}

}  // namespace ofdma::oracle

#endif
