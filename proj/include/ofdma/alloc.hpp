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

#ifndef OFDMA_ALLOC_HPP
#define OFDMA_ALLOC_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <vector>

namespace ofdma {

// Normalized power gains for one slot and one fixed user triple:
// g(j, m) = |h_{j -> user of cell m}|^2 / sigma^2.
struct LinkGains {
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
};

// SINR of cell m's user under transmit powers p (one scalar per BS).
double user_sinr(const LinkGains& gains, const Eigen::Vector3d& powers, int m);

// Per-subcarrier-normalized rate (1/N) log2(1 + sinr).
double user_rate(const LinkGains& gains, const Eigen::Vector3d& powers, int m,
                 int n_subcarriers);

// Water-filling level for one interference-free link:
// p = max(0, w/(lambda N ln2) - 1/g_eff). Throws unless lambda > 0,
// g_eff > 0 and w >= 0.
double waterfilling_power(double g_eff, double weight, double lambda,
                          int n_subcarriers);

struct PowerOpt {
  Eigen::Vector3d powers = Eigen::Vector3d::Zero();
  double objective = 0.0;  // sum_m w_m r_m - lambda_m p_m
};

// Maximizes the per-slot Lagrangian over p in [0, cap]^3 for a fixed user
// triple: multi-start coordinate ascent (all-off plus each single-BS-at-cap
// corner) with golden-section line searches. power_tol is the final line
// search tolerance in power units. refine=false skips the final
// full-precision pass; use it to screen candidates, then re-solve the
// winner with refine=true.
PowerOpt optimize_powers_fixed_users(const LinkGains& gains,
                                     const Eigen::Vector3d& weights,
                                     const Eigen::Vector3d& lambda,
                                     const Eigen::Vector3d& p_cap,
                                     int n_subcarriers,
                                     double power_tol = 1e-6,
                                     bool refine = true);

// Closed-form max over t in [0, cap] of A*log1p(g t)/ln-free form minus
// lambda*t, the interference-free single-link problem. A = w/(N ln2).
struct SingleLinkOpt {
  double power = 0.0;
  double value = 0.0;
};
SingleLinkOpt single_link_max(double gain, double a_coeff, double lambda,
                              double cap);

// Gains of every candidate link on one slot: by_cell[m] is 3 x K with
// (j, k) = gain from BS j to user k of cell m.
struct ScGains {
  std::array<Eigen::Matrix<double, 3, Eigen::Dynamic>, 3> by_cell;
};

struct SlotSolution {
  std::array<int, 3> users = {0, 0, 0};
  Eigen::Vector3d powers = Eigen::Vector3d::Zero();
  LinkGains gains;
  Eigen::Vector3d weights = Eigen::Vector3d::Ones();
  double objective = 0.0;
};

// Exhaustive-equivalent search over user triples: triples are scanned in
// decreasing order of a separable interference-free upper bound and pruned
// once the bound falls below the incumbent minus 1e-12, which cannot change
// the argmax. Exact objective ties resolve to the lexicographically
// smallest triple. candidates, when given, restricts each cell's user set;
// every list must be non-empty (callers fall back to the full set first).
SlotSolution per_sc_subproblem(
    const ScGains& gains, const Eigen::MatrixXd& weights,
    const Eigen::Vector3d& lambda, const Eigen::Vector3d& p_cap,
    int n_subcarriers,
    const std::array<std::vector<int>, 3>* candidates = nullptr,
    const std::array<int, 3>* seed_triple = nullptr);

// Generic pruned triple search used by the per-subcarrier and per-pair
// subproblems. bounds(m, k) must upper-bound cell m's best objective
// contribution when user k is selected, for any companion users.
template <typename EvalFn>
SlotSolution prune_triple_search(const std::array<std::vector<int>, 3>& cand,
                                 const Eigen::MatrixXd& bounds, EvalFn&& eval,
                                 const std::array<int, 3>* seed_triple) {
  struct Item {
    double bound;
    std::array<int, 3> triple;
  };
  std::vector<Item> items;
  items.reserve(cand[0].size() * std::max<std::size_t>(cand[1].size(), 1) *
                std::max<std::size_t>(cand[2].size(), 1));
  for (int k0 : cand[0]) {
    for (int k1 : cand[1]) {
      for (int k2 : cand[2]) {
        items.push_back(
            {bounds(0, k0) + bounds(1, k1) + bounds(2, k2), {k0, k1, k2}});
      }
    }
  }

  SlotSolution best;
  best.objective = -std::numeric_limits<double>::infinity();
  bool have_best = false;
  auto consider = [&](const std::array<int, 3>& triple) {
    SlotSolution s = eval(triple);
    s.users = triple;
    if (!have_best || s.objective > best.objective ||
        (s.objective == best.objective && triple < best.users)) {
      best = s;
      have_best = true;
    }
  };

  if (items.empty()) return best;  // no feasible triple: caller handles

  if (seed_triple != nullptr) consider(*seed_triple);

  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.triple < b.triple;
  });
  for (const Item& it : items) {
    if (have_best && it.bound < best.objective - 1e-12) break;
    if (seed_triple != nullptr && it.triple == *seed_triple) continue;
    consider(it.triple);
  }
  return best;
}

using SlotSolver =
    std::function<SlotSolution(int slot, const Eigen::Vector3d& lambda)>;

struct DualOptions {
  int max_iters = 300;
  double volume_tol = 1e-12;  // relative ellipsoid volume floor
  double gap_stop = 0.01;     // stop once the duality gap is this small; 0 off
  double center_scale = 5.0;  // initial center = scale * lambda0 per axis
  double radius_scale = 8.6602540378443865;  // initial radius in lambda0 units
  // Optional warm start: begin from a small ellipsoid around warm_lambda.
  // If the gap target is missed from there, the solve restarts wide and the
  // two runs' bounds are merged.
  bool has_warm = false;
  Eigen::Vector3d warm_lambda = Eigen::Vector3d::Zero();
  double warm_radius = 1.0;  // initial radius in units of the warm center
};

struct DualHistoryEntry {
  Eigen::Vector3d lambda;
  double dual_value;
  double primal_value;  // feasible utility extracted at this iterate
};

struct MasterResult {
  Eigen::Vector3d lambda = Eigen::Vector3d::Zero();  // best dual iterate
  double dual_value = 0.0;    // tightest upper bound found
  double primal_value = 0.0;  // best feasible utility found
  double rel_gap = 0.0;
  bool converged = true;  // false if the relative gap exceeds 5 percent
  int iterations = 0;
  Eigen::Vector3d power_used = Eigen::Vector3d::Zero();
  std::vector<SlotSolution> slots;  // best feasible allocation, powers scaled
  std::vector<DualHistoryEntry> history;
};

// Ellipsoid method on the dual of the weighted sum-rate problem. Every
// dual iterate's slot solutions are rescaled to the per-BS budgets and kept
// as a primal candidate; the best one is returned.
MasterResult dual_master(int n_slots, const SlotSolver& solver,
                         const Eigen::Vector3d& p_tot, int n_subcarriers,
                         const DualOptions& opts);

}  // namespace ofdma

#endif
