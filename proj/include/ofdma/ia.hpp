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

#ifndef OFDMA_IA_HPP
#define OFDMA_IA_HPP

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "ofdma/channel.hpp"

namespace ofdma {

// Subcarriers are paired (i, i + N/2), the split that keeps paired channels
// far apart in frequency. Indices are 0-based.
struct Pairing {
  int n_subcarriers = 0;
  std::vector<std::array<int, 2>> pairs;
};

Pairing build_pairing(int n_subcarriers);  // throws if N is odd

// 2x2 diagonal channel matrices for one pair and one user triple:
// H_{j->m} = diag(h[j][m][0], h[j][m][1]), entries indexed [tx][rx_cell].
struct PairedChannelSet {
  std::array<std::array<Eigen::Vector2cd, kNumCells>, kNumCells> h;
  double sigma2 = 1.0;
};

PairedChannelSet paired_channels(const ChannelTensor& tensor,
                                 const Pairing& pairing, int pair_index,
                                 const std::array<int, 3>& triple);

enum class IaSelect {
  kLast,         // return the final iterate (pure leakage minimization)
  kBestUtility,  // return the iterate with the best fixed-power rate proxy
};

struct IaOptions {
  int max_iters = 40;
  double leakage_tol = 1e-10;   // absolute; stop once leakage falls below
  IaSelect select = IaSelect::kLast;
  double reference_power = 1e3; // per-stream power for the kBestUtility proxy
  // ia_operating_points only: snapshot powers (empty = {reference_power})
  // and max-SINR refinement sweeps per snapshot.
  std::vector<double> snapshot_powers;
  int max_sinr_iters = 60;
  // Simplex-ascent polish sweeps of the rate proxy per snapshot (0 = off).
  int polish_iters = 0;
};

struct IaSolution {
  std::array<Eigen::Vector2cd, kNumCells> v;  // unit-norm precoders
  std::array<Eigen::Vector2cd, kNumCells> u;  // unit-norm receive filters
  Eigen::Matrix3cd effective;  // effective(j,m) = u_m^H H_{j->m} v_j
  double leakage = 0.0;        // of the returned iterate
  int iterations = 0;          // receive-filter updates performed
  std::vector<double> history; // leakage after each update, non-increasing
};

// Alternating leakage minimization between the network and its reciprocal.
// Receive filters are least eigenvectors of the interference covariance.
// Deterministic: balanced init v = (1,1)/sqrt(2), closed-form 2x2 eigvec
// with a fixed phase convention.
IaSolution distributed_ia(const PairedChannelSet& ch, const IaOptions& opts);

struct IaOperatingPoint {
  std::array<Eigen::Vector2cd, kNumCells> v;
  std::array<Eigen::Vector2cd, kNumCells> u;
  Eigen::Matrix3cd effective;  // (j, m) = u_m^H H_{j->m} v_j
  double leakage = 0.0;
};

// Candidate transmit configurations for one pair and triple, one per
// snapshot power: the best-rate-proxy iterate of the leakage descent at
// that power, refined by max-SINR sweeps. Exact alignment is infeasible
// on diagonal pair channels, so the right working point depends on the
// power scale; callers pick among these per slot.
std::vector<IaOperatingPoint> ia_operating_points(const PairedChannelSet& ch,
                                                  const IaOptions& opts);

// Total forward leakage sum_m sum_{j != m} |u_m^H H_{j->m} v_j|^2.
double interference_leakage(const PairedChannelSet& ch,
                            const std::array<Eigen::Vector2cd, kNumCells>& v,
                            const std::array<Eigen::Vector2cd, kNumCells>& u);

// Normalized effective power gains |u_m^H H_{j->m} v_j|^2 / sigma^2,
// indexed (j, m) like per-subcarrier link gains.
Eigen::Matrix3d effective_link_gains(const PairedChannelSet& ch,
                                     const IaSolution& sol);

// Least eigenvector of a 2x2 Hermitian matrix, closed form, unit norm,
// first significant component real nonnegative.
Eigen::Vector2cd least_eigvec_2x2(const Eigen::Matrix2cd& q);

}  // namespace ofdma

#endif
