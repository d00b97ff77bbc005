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

#ifndef OFDMA_SCHEMES_HPP
#define OFDMA_SCHEMES_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ofdma/alloc.hpp"
#include "ofdma/channel.hpp"
#include "ofdma/ia.hpp"

namespace ofdma {

enum class SchemeId { kTraditional, kIaPerfect, kIaRi, kHybrid, kOfp };

std::string_view scheme_name(SchemeId id);
std::optional<SchemeId> parse_scheme(std::string_view name);

struct SchemeOptions {
  DualOptions dual;
  IaOptions ia{.max_iters = 400,
               .leakage_tol = 1e-10,
               .select = IaSelect::kBestUtility,
               .reference_power = 1e3,
               .snapshot_powers = {1e1, 1e3, 1e5},
               .max_sinr_iters = 60};
  bool ia_preselect = false;  // restrict pair slots to the strongest users
  int ia_preselect_count = 2;
};

struct SchemeResult {
  SchemeId scheme = SchemeId::kTraditional;
  double utility = 0.0;  // weighted sum rate, bits/s/Hz
  // Per slot: selected user per cell (-1 when the BS is silent by design)
  // and transmit powers. slot_scs lists the subcarriers a slot spans
  // (second entry -1 for single-subcarrier slots).
  Eigen::MatrixXi users;
  Eigen::MatrixXd powers;
  std::vector<std::array<int, 2>> slot_scs;
  Eigen::MatrixXd per_user_rates;  // 3 x K, unweighted
  Eigen::Vector3d power_used = Eigen::Vector3d::Zero();
  Eigen::Vector3d budget = Eigen::Vector3d::Zero();
  Eigen::Vector3d dual_lambda = Eigen::Vector3d::Zero();
  double dual_value = 0.0;
  double rel_gap = 0.0;
  bool converged = true;
  int dual_iterations = 0;
  double mean_ia_leakage = 0.0;
  std::vector<std::string> notes;
};

// Memo of IA operating points per (pair, user triple). Precoders depend
// only on the channel realization, so one cache serves every budget and
// both IA variants of a trial. Entries are pure-function results; lazy
// fill order cannot change values. Callers pick one point per entry for
// the power scale at hand.
class IaPairCache {
 public:
  IaPairCache(const ChannelTensor& tensor, const Pairing& pairing,
              const IaOptions& opts);

  struct Entry {
    // Effective |u^H H v|^2 / sigma^2 as (j, m), one per operating point.
    std::vector<Eigen::Matrix3d> gains;
    std::vector<double> leakage;
  };

  const Entry& get(int pair_index, const std::array<int, 3>& triple);

 private:
  const ChannelTensor* tensor_;
  Pairing pairing_;
  IaOptions opts_;
  int users_ = 0;
  std::vector<std::optional<Entry>> entries_;
};

// Per-subcarrier allocation with full frequency reuse: the reference
// scheme solved by Lagrangian dual decomposition.
SchemeResult run_traditional(const ChannelTensor& tensor,
                             const Eigen::MatrixXd& weights,
                             const Eigen::Vector3d& p_tot,
                             const SchemeOptions& opts,
                             const SchemeResult* warm = nullptr);

// Subcarrier-pair allocation with interference alignment precoding.
// with_ri keeps the residual interference in the rates; otherwise the
// residual terms are deleted (genie benchmark).
SchemeResult run_ia(const ChannelTensor& tensor,
                    const Eigen::MatrixXd& weights,
                    const Eigen::Vector3d& p_tot, bool with_ri,
                    const SchemeOptions& opts, IaPairCache* cache = nullptr,
                    const SchemeResult* warm = nullptr);

// Subband split: IA pairs on the inner band for cell-interior users,
// per-subcarrier reuse on the rest for cell-edge users, one coupled
// per-BS power budget.
SchemeResult run_hybrid(const ChannelTensor& tensor, const UserLayout& layout,
                        const Eigen::MatrixXd& weights,
                        const Eigen::Vector3d& p_tot,
                        const SchemeOptions& opts,
                        IaPairCache* cache = nullptr,
                        const SchemeResult* warm = nullptr);

// Orthogonal frequency partition baseline: each cell owns a third of the
// band and water-fills it; exact, no dual iterations.
SchemeResult run_ofp(const ChannelTensor& tensor,
                     const Eigen::MatrixXd& weights,
                     const Eigen::Vector3d& p_tot);

// Subcarriers of the inner (IA) subband: pairs (i, i + N/2) for
// i < floor(N/6), both halves.
std::vector<int> hybrid_ia_band(int n_subcarriers);

}  // namespace ofdma

#endif
