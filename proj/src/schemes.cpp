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

#include "ofdma/schemes.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace ofdma {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

std::vector<ScGains> per_sc_gains(const ChannelTensor& tensor) {
  const auto& d = tensor.dims();
  std::vector<ScGains> out(d.n_subcarriers);
  for (int n = 0; n < d.n_subcarriers; ++n) {
    for (int m = 0; m < kNumCells; ++m) {
      out[n].by_cell[m].resize(3, d.users_per_cell);
      for (int j = 0; j < kNumCells; ++j) {
        for (int k = 0; k < d.users_per_cell; ++k) {
          out[n].by_cell[m](j, k) = tensor.gain(j, m, k, n);
        }
      }
    }
  }
  return out;
}

SchemeResult from_master(SchemeId id, const MasterResult& mr, int n_sc,
                         int n_users,
                         std::vector<std::array<int, 2>> slot_scs,
                         const Eigen::Vector3d& p_tot) {
  const int n_slots = static_cast<int>(mr.slots.size());
  SchemeResult r;
  r.scheme = id;
  r.users.setConstant(3, n_slots, -1);
  r.powers.setZero(3, n_slots);
  r.per_user_rates.setZero(3, n_users);
  r.slot_scs = std::move(slot_scs);
  for (int s = 0; s < n_slots; ++s) {
    const SlotSolution& sol = mr.slots[s];
    for (int m = 0; m < kNumCells; ++m) {
      r.users(m, s) = sol.users[m];
      r.powers(m, s) = sol.powers[m];
      r.per_user_rates(m, sol.users[m]) +=
          user_rate(sol.gains, sol.powers, m, n_sc);
    }
  }
  r.utility = mr.primal_value;
  r.power_used = mr.power_used;
  r.budget = p_tot;
  r.dual_lambda = mr.lambda;
  r.dual_value = mr.dual_value;
  r.rel_gap = mr.rel_gap;
  r.converged = mr.converged;
  r.dual_iterations = mr.iterations;
  return r;
}

// Prices scale roughly inversely with the budget, so a previous solve's
// multipliers seed a small initial ellipsoid for the next one. dual_master
// falls back to a wide restart when the seed misses.
DualOptions warmed_dual(const DualOptions& base, const SchemeResult* warm,
                        const Eigen::Vector3d& p_tot) {
  DualOptions d = base;
  if (warm == nullptr || warm->budget.minCoeff() <= 0.0 ||
      p_tot.minCoeff() <= 0.0) {
    return d;
  }
  d.has_warm = true;
  d.warm_lambda = warm->dual_lambda.cwiseProduct(
      warm->budget.cwiseQuotient(p_tot));
  return d;
}

// Re-evaluates a previous allocation under the new budgets (powers scaled
// per BS) and keeps it if it beats the fresh solution. With budgets scaled
// uniformly this never lowers utility, which makes mean rates monotone
// across an ascending SNR sweep.
void maybe_apply_warm(
    SchemeResult& out, const SchemeResult* warm, const Eigen::Vector3d& p_tot,
    int n_sc, int n_users, const Eigen::MatrixXd& weights,
    const std::function<LinkGains(int, const std::array<int, 3>&)>& gains_of) {
  if (warm == nullptr || warm->users.cols() != out.users.cols()) return;
  Eigen::Vector3d ratio = Eigen::Vector3d::Zero();
  for (int m = 0; m < kNumCells; ++m) {
    if (warm->budget[m] > 0.0) ratio[m] = p_tot[m] / warm->budget[m];
  }
  const int n_slots = static_cast<int>(out.users.cols());
  double utility = 0.0;
  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(3, n_users);
  Eigen::MatrixXd powers(3, n_slots);
  Eigen::Vector3d used = Eigen::Vector3d::Zero();
  for (int s = 0; s < n_slots; ++s) {
    std::array<int, 3> triple;
    for (int m = 0; m < kNumCells; ++m) triple[m] = warm->users(m, s);
    const LinkGains g = gains_of(s, triple);
    const Eigen::Vector3d p = warm->powers.col(s).cwiseProduct(ratio);
    powers.col(s) = p;
    used += p;
    for (int m = 0; m < kNumCells; ++m) {
      const double rate = user_rate(g, p, m, n_sc);
      rates(m, triple[m]) += rate;
      utility += weights(m, triple[m]) * rate;
    }
  }
  if (utility <= out.utility) return;
  out.utility = utility;
  out.users = warm->users;
  out.powers = powers;
  out.per_user_rates = rates;
  out.power_used = used;
  const double denom = std::max(std::abs(out.dual_value), 1e-300);
  out.rel_gap = std::max(0.0, (out.dual_value - utility) / denom);
  out.converged = out.rel_gap <= 0.05;
}

std::array<std::vector<int>, 3> all_users_candidates(int n_users) {
  std::array<std::vector<int>, 3> cand;
  for (int m = 0; m < kNumCells; ++m) {
    cand[m].resize(n_users);
    for (int k = 0; k < n_users; ++k) cand[m][k] = k;
  }
  return cand;
}

Eigen::Matrix3d diag_only(const Eigen::Matrix3d& g) {
  Eigen::Matrix3d d = Eigen::Matrix3d::Zero();
  d.diagonal() = g.diagonal();
  return d;
}

// Chooses one cached operating point per (pair, triple) for a run: the
// with-RI rate proxy at the run's per-slot power share. Both IA variants
// of a run rate the same transmit configuration, so the perfect curve is
// the with-RI one minus residual terms, not a separately tuned scheme.
class IaPointPick {
 public:
  IaPointPick(IaPairCache& cache, const Eigen::MatrixXd& weights,
              double share, int n_pairs, int n_users)
      : cache_(&cache),
        weights_(&weights),
        share_(share > 0.0 ? share : 1.0),
        users_(n_users),
        pick_(static_cast<std::size_t>(n_pairs) * n_users * n_users * n_users,
              -1) {}

  int index(int pair, const std::array<int, 3>& triple) {
    const std::size_t at =
        ((static_cast<std::size_t>(pair) * users_ + triple[0]) * users_ +
         triple[1]) *
            users_ +
        triple[2];
    if (pick_[at] < 0) {
      const IaPairCache::Entry& e = cache_->get(pair, triple);
      double best = -std::numeric_limits<double>::infinity();
      int arg = 0;
      for (int c = 0; c < static_cast<int>(e.gains.size()); ++c) {
        double util = 0.0;
        for (int m = 0; m < kNumCells; ++m) {
          double interf = 1.0;
          for (int j = 0; j < kNumCells; ++j) {
            if (j != m) interf += share_ * e.gains[c](j, m);
          }
          util += (*weights_)(m, triple[m]) *
                  std::log1p(share_ * e.gains[c](m, m) / interf);
        }
        if (util > best) {
          best = util;
          arg = c;
        }
      }
      pick_[at] = static_cast<int16_t>(arg);
    }
    return pick_[at];
  }

  const Eigen::Matrix3d& gains(int pair, const std::array<int, 3>& triple) {
    return cache_->get(pair, triple).gains[index(pair, triple)];
  }

  double leakage(int pair, const std::array<int, 3>& triple) {
    return cache_->get(pair, triple).leakage[index(pair, triple)];
  }

 private:
  IaPairCache* cache_;
  const Eigen::MatrixXd* weights_;
  double share_;
  int users_;
  std::vector<int16_t> pick_;
};

// Solves one pair slot: pruned triple search over cached IA solutions.
SlotSolution pair_subproblem(IaPointPick& pick, int pair_index,
                             const std::array<int, 2>& scs,
                             const ChannelTensor& tensor,
                             const Eigen::MatrixXd& weights,
                             const Eigen::Vector3d& lambda,
                             const Eigen::Vector3d& p_cap, bool with_ri,
                             const std::array<std::vector<int>, 3>& cand,
                             const std::array<int, 3>* seed) {
  const int n_sc = tensor.dims().n_subcarriers;
  const int n_users = tensor.dims().users_per_cell;
  const double scale = 1.0 / (n_sc * kLn2);

  // The effective gain of any unit-norm precoder pair on a diagonal 2x2
  // channel is at most the larger squared entry, so this bounds every
  // triple containing (m, k) regardless of companions.
  Eigen::MatrixXd bounds = Eigen::MatrixXd::Zero(3, n_users);
  for (int m = 0; m < kNumCells; ++m) {
    for (int k : cand[m]) {
      const double gub = std::max(tensor.gain(m, m, k, scs[0]),
                                  tensor.gain(m, m, k, scs[1]));
      bounds(m, k) =
          single_link_max(gub, weights(m, k) * scale, lambda[m], p_cap[m])
              .value;
    }
  }

  auto eval = [&](const std::array<int, 3>& triple) {
    const Eigen::Matrix3d& g = pick.gains(pair_index, triple);
    SlotSolution s;
    s.gains.g = with_ri ? g : diag_only(g);
    for (int m = 0; m < kNumCells; ++m) s.weights[m] = weights(m, triple[m]);
    if (with_ri) {
      const PowerOpt po = optimize_powers_fixed_users(
          s.gains, s.weights, lambda, p_cap, n_sc, 1e-6, false);
      s.powers = po.powers;
      s.objective = po.objective;
    } else {
      // No residual terms: the slot separates into three water-fillings.
      s.objective = 0.0;
      for (int m = 0; m < kNumCells; ++m) {
        const SingleLinkOpt so = single_link_max(
            s.gains.g(m, m), s.weights[m] * scale, lambda[m], p_cap[m]);
        s.powers[m] = so.power;
        s.objective += so.value;
      }
    }
    return s;
  };

  SlotSolution best = prune_triple_search(cand, bounds, eval, seed);
  if (with_ri) {
    const PowerOpt po = optimize_powers_fixed_users(
        best.gains, best.weights, lambda, p_cap, n_sc, 1e-6, true);
    if (po.objective > best.objective) {
      best.powers = po.powers;
      best.objective = po.objective;
    }
  }
  return best;
}

}  // namespace

std::string_view scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::kTraditional:
      return "traditional";
    case SchemeId::kIaPerfect:
      return "ia_perfect";
    case SchemeId::kIaRi:
      return "ia_ri";
    case SchemeId::kHybrid:
      return "hybrid";
    case SchemeId::kOfp:
      return "ofp";
  }
  return "unknown";
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
  for (SchemeId id : {SchemeId::kTraditional, SchemeId::kIaPerfect,
                      SchemeId::kIaRi, SchemeId::kHybrid, SchemeId::kOfp}) {
    if (name == scheme_name(id)) return id;
  }
  return std::nullopt;
}

IaPairCache::IaPairCache(const ChannelTensor& tensor, const Pairing& pairing,
                         const IaOptions& opts)
    : tensor_(&tensor),
      pairing_(pairing),
      opts_(opts),
      users_(tensor.dims().users_per_cell) {
  entries_.resize(pairing_.pairs.size() * static_cast<std::size_t>(users_) *
                  users_ * users_);
}

const IaPairCache::Entry& IaPairCache::get(int pair_index,
                                           const std::array<int, 3>& triple) {
  const std::size_t idx =
      ((static_cast<std::size_t>(pair_index) * users_ + triple[0]) * users_ +
       triple[1]) *
          users_ +
      triple[2];
  if (!entries_[idx]) {
    const PairedChannelSet set =
        paired_channels(*tensor_, pairing_, pair_index, triple);
    Entry e;
    for (const IaOperatingPoint& pt : ia_operating_points(set, opts_)) {
      Eigen::Matrix3d g;
      for (int j = 0; j < kNumCells; ++j) {
        for (int m = 0; m < kNumCells; ++m) {
          g(j, m) = std::norm(pt.effective(j, m)) / set.sigma2;
        }
      }
      e.gains.push_back(g);
      e.leakage.push_back(pt.leakage);
    }
    entries_[idx] = std::move(e);
  }
  return *entries_[idx];
}

SchemeResult run_traditional(const ChannelTensor& tensor,
                             const Eigen::MatrixXd& weights,
                             const Eigen::Vector3d& p_tot,
                             const SchemeOptions& opts,
                             const SchemeResult* warm) {
  const auto& d = tensor.dims();
  const int n_sc = d.n_subcarriers;
  const std::vector<ScGains> gains = per_sc_gains(tensor);

  std::vector<std::array<int, 3>> seed(n_sc);
  std::vector<char> have(n_sc, 0);
  SlotSolver solver = [&](int slot, const Eigen::Vector3d& lambda) {
    SlotSolution s = per_sc_subproblem(gains[slot], weights, lambda, p_tot,
                                       n_sc, nullptr,
                                       have[slot] ? &seed[slot] : nullptr);
    seed[slot] = s.users;
    have[slot] = 1;
    return s;
  };

  const MasterResult mr =
      dual_master(n_sc, solver, p_tot, n_sc,
                  warmed_dual(opts.dual, warm, p_tot));

  std::vector<std::array<int, 2>> slot_scs(n_sc);
  for (int n = 0; n < n_sc; ++n) slot_scs[n] = {n, -1};
  SchemeResult r = from_master(SchemeId::kTraditional, mr, n_sc,
                               d.users_per_cell, std::move(slot_scs), p_tot);

  maybe_apply_warm(r, warm, p_tot, n_sc, d.users_per_cell, weights,
                   [&](int slot, const std::array<int, 3>& triple) {
                     LinkGains g;
                     for (int m = 0; m < kNumCells; ++m) {
                       for (int j = 0; j < kNumCells; ++j) {
                         g.g(j, m) = gains[slot].by_cell[m](j, triple[m]);
                       }
                     }
                     return g;
                   });
  return r;
}

SchemeResult run_ia(const ChannelTensor& tensor,
                    const Eigen::MatrixXd& weights,
                    const Eigen::Vector3d& p_tot, bool with_ri,
                    const SchemeOptions& opts, IaPairCache* cache,
                    const SchemeResult* warm) {
  const auto& d = tensor.dims();
  const int n_sc = d.n_subcarriers;
  const int n_users = d.users_per_cell;
  const Pairing pairing = build_pairing(n_sc);
  const int n_pairs = static_cast<int>(pairing.pairs.size());

  std::optional<IaPairCache> local;
  if (cache == nullptr) {
    local.emplace(tensor, pairing, opts.ia);
    cache = &*local;
  }
  IaPointPick pick(*cache, weights, p_tot.mean() / std::max(1, n_pairs),
                   n_pairs, n_users);

  // Candidate users per pair: everyone, or the strongest few by mean
  // direct gain across the pair (deterministic, ties to lower index).
  std::vector<std::array<std::vector<int>, 3>> cand(n_pairs);
  for (int q = 0; q < n_pairs; ++q) {
    if (!opts.ia_preselect || opts.ia_preselect_count >= n_users) {
      cand[q] = all_users_candidates(n_users);
      continue;
    }
    const auto& pr = pairing.pairs[q];
    for (int m = 0; m < kNumCells; ++m) {
      std::vector<int> order(n_users);
      for (int k = 0; k < n_users; ++k) order[k] = k;
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double ga =
            tensor.gain(m, m, a, pr[0]) + tensor.gain(m, m, a, pr[1]);
        const double gb =
            tensor.gain(m, m, b, pr[0]) + tensor.gain(m, m, b, pr[1]);
        return ga > gb;
      });
      order.resize(opts.ia_preselect_count);
      std::sort(order.begin(), order.end());
      cand[q][m] = std::move(order);
    }
  }

  std::vector<std::array<int, 3>> seed(n_pairs);
  std::vector<char> have(n_pairs, 0);
  SlotSolver solver = [&](int slot, const Eigen::Vector3d& lambda) {
    SlotSolution s = pair_subproblem(pick, slot, pairing.pairs[slot],
                                     tensor, weights, lambda, p_tot, with_ri,
                                     cand[slot],
                                     have[slot] ? &seed[slot] : nullptr);
    seed[slot] = s.users;
    have[slot] = 1;
    return s;
  };

  const MasterResult mr =
      dual_master(n_pairs, solver, p_tot, n_sc,
                  warmed_dual(opts.dual, warm, p_tot));

  std::vector<std::array<int, 2>> slot_scs(n_pairs);
  for (int q = 0; q < n_pairs; ++q) slot_scs[q] = pairing.pairs[q];
  SchemeResult r =
      from_master(with_ri ? SchemeId::kIaRi : SchemeId::kIaPerfect, mr, n_sc,
                  n_users, std::move(slot_scs), p_tot);

  maybe_apply_warm(r, warm, p_tot, n_sc, n_users, weights,
                   [&](int slot, const std::array<int, 3>& triple) {
                     LinkGains g;
                     const Eigen::Matrix3d& eg = pick.gains(slot, triple);
                     g.g = with_ri ? eg : diag_only(eg);
                     return g;
                   });

  double leak = 0.0;
  for (int q = 0; q < n_pairs; ++q) {
    std::array<int, 3> triple;
    for (int m = 0; m < kNumCells; ++m) triple[m] = r.users(m, q);
    leak += pick.leakage(q, triple);
  }
  r.mean_ia_leakage = n_pairs > 0 ? leak / n_pairs : 0.0;
  return r;
}

std::vector<int> hybrid_ia_band(int n_subcarriers) {
  const int half = n_subcarriers / 2;
  const int count = n_subcarriers / 6;
  std::vector<int> band;
  band.reserve(2 * count);
  for (int i = 0; i < count; ++i) band.push_back(i);
  for (int i = 0; i < count; ++i) band.push_back(half + i);
  return band;
}

SchemeResult run_hybrid(const ChannelTensor& tensor, const UserLayout& layout,
                        const Eigen::MatrixXd& weights,
                        const Eigen::Vector3d& p_tot,
                        const SchemeOptions& opts, IaPairCache* cache,
                        const SchemeResult* warm) {
  const auto& d = tensor.dims();
  const int n_sc = d.n_subcarriers;
  const int n_users = d.users_per_cell;
  const Pairing pairing = build_pairing(n_sc);
  const int n_band_pairs = n_sc / 6;

  std::optional<IaPairCache> local;
  if (cache == nullptr) {
    local.emplace(tensor, pairing, opts.ia);
    cache = &*local;
  }

  SchemeResult result;  // used only to carry notes into the final result
  const std::array<std::vector<int>, 3> all = all_users_candidates(n_users);
  std::array<std::vector<int>, 3> cir, cnir;
  bool fallback = false;
  for (int m = 0; m < kNumCells; ++m) {
    for (int k = 0; k < n_users; ++k) {
      (layout.regions[m][k] == Region::kCir ? cir[m] : cnir[m]).push_back(k);
    }
    if (cir[m].empty()) {
      fallback = true;
      result.notes.push_back("cell " + std::to_string(m) +
                             ": no interior users, alignment band falls "
                             "back to per-subcarrier allocation");
    }
    if (cnir[m].empty()) {
      cnir[m] = all[m];
      result.notes.push_back("cell " + std::to_string(m) +
                             ": no edge users, outer subband open to all");
    }
  }

  const std::vector<int> band = hybrid_ia_band(n_sc);
  std::vector<char> in_band(n_sc, 0);
  for (int n : band) in_band[n] = 1;
  const int eff_pairs = fallback ? 0 : n_band_pairs;
  std::vector<int> outer;
  for (int n = 0; n < n_sc; ++n) {
    if (fallback || !in_band[n]) outer.push_back(n);
  }
  const int n_slots = eff_pairs + static_cast<int>(outer.size());

  const std::vector<ScGains> gains = per_sc_gains(tensor);
  IaPointPick pick(*cache, weights, p_tot.mean() / std::max(1, n_slots),
                   n_band_pairs, n_users);

  std::vector<std::array<int, 3>> seed(n_slots);
  std::vector<char> have(n_slots, 0);
  SlotSolver solver = [&](int slot, const Eigen::Vector3d& lambda) {
    SlotSolution s;
    if (slot < eff_pairs) {
      s = pair_subproblem(pick, slot, pairing.pairs[slot], tensor, weights,
                          lambda, p_tot, true, cir,
                          have[slot] ? &seed[slot] : nullptr);
    } else {
      const int n = outer[slot - eff_pairs];
      const auto& cand = (fallback && in_band[n]) ? all : cnir;
      s = per_sc_subproblem(gains[n], weights, lambda, p_tot, n_sc, &cand,
                            have[slot] ? &seed[slot] : nullptr);
    }
    seed[slot] = s.users;
    have[slot] = 1;
    return s;
  };

  const MasterResult mr =
      dual_master(n_slots, solver, p_tot, n_sc,
                  warmed_dual(opts.dual, warm, p_tot));

  std::vector<std::array<int, 2>> slot_scs(n_slots);
  for (int q = 0; q < eff_pairs; ++q) slot_scs[q] = pairing.pairs[q];
  for (std::size_t i = 0; i < outer.size(); ++i) {
    slot_scs[eff_pairs + i] = {outer[i], -1};
  }
  SchemeResult r = from_master(SchemeId::kHybrid, mr, n_sc, n_users,
                               std::move(slot_scs), p_tot);
  r.notes = std::move(result.notes);

  maybe_apply_warm(r, warm, p_tot, n_sc, n_users, weights,
                   [&](int slot, const std::array<int, 3>& triple) {
                     LinkGains g;
                     if (slot < eff_pairs) {
                       g.g = pick.gains(slot, triple);
                     } else {
                       const int n = outer[slot - eff_pairs];
                       for (int m = 0; m < kNumCells; ++m) {
                         for (int j = 0; j < kNumCells; ++j) {
                           g.g(j, m) = gains[n].by_cell[m](j, triple[m]);
                         }
                       }
                     }
                     return g;
                   });

  if (eff_pairs > 0) {
    double leak = 0.0;
    for (int q = 0; q < eff_pairs; ++q) {
      std::array<int, 3> triple;
      for (int m = 0; m < kNumCells; ++m) triple[m] = r.users(m, q);
      leak += pick.leakage(q, triple);
    }
    r.mean_ia_leakage = leak / eff_pairs;
  }
  return r;
}

SchemeResult run_ofp(const ChannelTensor& tensor,
                     const Eigen::MatrixXd& weights,
                     const Eigen::Vector3d& p_tot) {
  const auto& d = tensor.dims();
  const int n_sc = d.n_subcarriers;
  const int n_users = d.users_per_cell;
  const int q = n_sc / 3;

  SchemeResult r;
  r.scheme = SchemeId::kOfp;
  r.users.setConstant(3, n_sc, -1);
  r.powers.setZero(3, n_sc);
  r.per_user_rates.setZero(3, n_users);
  r.slot_scs.resize(n_sc);
  for (int n = 0; n < n_sc; ++n) r.slot_scs[n] = {n, -1};
  r.budget = p_tot;

  const double inv_nln2 = 1.0 / (n_sc * kLn2);
  for (int m = 0; m < kNumCells; ++m) {
    const int lo = m * q;
    const int hi = (m == 2) ? n_sc : (m + 1) * q;
    std::vector<int> sel(std::max(hi - lo, 0));
    std::vector<double> g(sel.size()), w(sel.size());
    double level_max = 0.0;
    for (int n = lo; n < hi; ++n) {
      int best_k = 0;
      double best_v = -1.0;
      for (int k = 0; k < n_users; ++k) {
        const double v = weights(m, k) * tensor.gain(m, m, k, n);
        if (v > best_v) {
          best_v = v;
          best_k = k;
        }
      }
      sel[n - lo] = best_k;
      g[n - lo] = tensor.gain(m, m, best_k, n);
      w[n - lo] = weights(m, best_k);
      if (w[n - lo] > 0.0 && g[n - lo] > 0.0) {
        level_max = std::max(level_max, w[n - lo] * g[n - lo] * inv_nln2);
      }
    }
    if (hi <= lo || p_tot[m] <= 0.0 || level_max <= 0.0) continue;

    auto spent = [&](double lambda) {
      double total = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] > 0.0 && w[i] > 0.0) {
          total += waterfilling_power(g[i], w[i], lambda, n_sc);
        }
      }
      return total;
    };

    // Bisection on the water level; spent() is decreasing in lambda.
    double lam_hi = level_max;
    double lam_lo = level_max;
    for (int it = 0; it < 2000 && spent(lam_lo) < p_tot[m]; ++it) {
      lam_lo *= 0.5;
    }
    for (int it = 0; it < 500; ++it) {
      const double mid = 0.5 * (lam_lo + lam_hi);
      if (spent(mid) > p_tot[m]) {
        lam_lo = mid;
      } else {
        lam_hi = mid;
      }
      if (p_tot[m] - spent(lam_hi) <= 1e-8 * p_tot[m]) break;
    }

    for (int n = lo; n < hi; ++n) {
      const std::size_t i = n - lo;
      if (g[i] <= 0.0 || w[i] <= 0.0) {
        r.users(m, n) = sel[i];
        continue;
      }
      const double p = waterfilling_power(g[i], w[i], lam_hi, n_sc);
      r.users(m, n) = sel[i];
      r.powers(m, n) = p;
      const double rate = inv_nln2 * std::log1p(p * g[i]);
      r.per_user_rates(m, sel[i]) += rate;
      r.utility += w[i] * rate;
      r.power_used[m] += p;
    }
  }
  r.dual_value = r.utility;
  r.rel_gap = 0.0;
  r.converged = true;
  return r;
}

}  // namespace ofdma
