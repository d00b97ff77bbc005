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

#include "ofdma/alloc.hpp"

#include <cmath>
#include <stdexcept>

namespace ofdma {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double rate_scale(int n_subcarriers) {
  return 1.0 / (n_subcarriers * kLn2);  // converts ln to (1/N) log2
}

// Full slot Lagrangian sum_m w_m r_m - lambda_m p_m.
double slot_objective(const Eigen::Matrix3d& g, const Eigen::Vector3d& a,
                      const Eigen::Vector3d& lambda,
                      const Eigen::Vector3d& p) {
  double f = 0.0;
  for (int m = 0; m < 3; ++m) {
    double interf = 1.0;
    for (int j = 0; j < 3; ++j) {
      if (j != m) interf += p[j] * g(j, m);
    }
    f += a[m] * std::log1p(p[m] * g(m, m) / interf) - lambda[m] * p[m];
  }
  return f;
}

// Scalar slice of the slot Lagrangian along coordinate m.
struct CoordSlice {
  double a_own;      // rate coefficient of the own term
  double slope;      // own SINR slope g_mm / I_m
  double lambda;
  // two cross terms: a_j * log1p(s_j / (c_j + b_j t))
  double a1, s1, c1, b1;
  double a2, s2, c2, b2;

  double operator()(double t) const {
    double f = a_own * std::log1p(slope * t) - lambda * t;
    f += a1 * std::log1p(s1 / (c1 + b1 * t));
    f += a2 * std::log1p(s2 / (c2 + b2 * t));
    return f;
  }
};

// First derivative of the slice; log-free, so root finding is cheap.
double slice_deriv(const CoordSlice& s, double t) {
  double d = s.a_own * s.slope / (1.0 + s.slope * t) - s.lambda;
  {
    const double d1 = s.c1 + s.b1 * t;
    d -= s.a1 * s.s1 * s.b1 / (d1 * (d1 + s.s1));
  }
  {
    const double d2 = s.c2 + s.b2 * t;
    d -= s.a2 * s.s2 * s.b2 / (d2 * (d2 + s.s2));
  }
  return d;
}

double slice_deriv2(const CoordSlice& s, double t) {
  const double own = 1.0 + s.slope * t;
  double d = -s.a_own * s.slope * s.slope / (own * own);
  {
    const double d1 = s.c1 + s.b1 * t;
    const double d2 = d1 + s.s1;
    d += s.a1 * s.s1 * s.b1 * s.b1 * (d1 + d2) / (d1 * d1 * d2 * d2);
  }
  {
    const double d1 = s.c2 + s.b2 * t;
    const double d2 = d1 + s.s2;
    d += s.a2 * s.s2 * s.b2 * s.b2 * (d1 + d2) / (d1 * d1 * d2 * d2);
  }
  return d;
}

// Maximizes the slice over [0, hi] given slice'(0) > 0. Safeguarded
// Newton on the derivative: the bracket keeps slice' positive on the left
// and negative on the right, so it converges to a local maximum; the
// endpoints are compared at the end. If slice'(hi) >= 0 the max is hi.
std::pair<double, double> slice_max(const CoordSlice& s, double hi,
                                    double tol) {
  double lo = 0.0;
  double dhi = slice_deriv(s, hi);
  if (dhi >= 0.0) return {hi, s(hi)};
  double t = std::min(hi, std::max(0.0, s.a_own / s.lambda - 1.0 / s.slope));
  if (!(t > lo) || !(t < hi)) t = 0.5 * hi;
  for (int it = 0; it < 60 && hi - lo > tol; ++it) {
    const double d = slice_deriv(s, t);
    if (d > 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double d2 = slice_deriv2(s, t);
    double next = (d2 < 0.0) ? t - d / d2 : lo;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  t = 0.5 * (lo + hi);
  double ft = s(t);
  const double f0 = s(0.0);
  if (f0 >= ft) {
    t = 0.0;
    ft = f0;
  }
  return {t, ft};
}

// One coordinate-ascent pass to convergence from a given start point.
double coord_ascent(const Eigen::Matrix3d& g, const Eigen::Vector3d& a,
                    const Eigen::Vector3d& lambda, const Eigen::Vector3d& cap,
                    double power_tol, Eigen::Vector3d& p) {
  double f_prev = slot_objective(g, a, lambda, p);
  for (int sweep = 0; sweep < 60; ++sweep) {
    for (int m = 0; m < 3; ++m) {
      const int j1 = (m + 1) % 3;
      const int j2 = (m + 2) % 3;
      double interf = 1.0 + p[j1] * g(j1, m) + p[j2] * g(j2, m);
      CoordSlice slice;
      slice.a_own = a[m];
      slice.slope = g(m, m) / interf;
      slice.lambda = lambda[m];
      slice.a1 = a[j1];
      slice.s1 = p[j1] * g(j1, j1);
      slice.c1 = 1.0 + p[j2] * g(j2, j1);
      slice.b1 = g(m, j1);
      slice.a2 = a[j2];
      slice.s2 = p[j2] * g(j2, j2);
      slice.c2 = 1.0 + p[j1] * g(j1, j2);
      slice.b2 = g(m, j2);

      // Exact shutdown test: if even the initial own-rate slope cannot pay
      // the price lambda, the slice is maximized at zero.
      if (slice.a_own * slice.slope <= slice.lambda || cap[m] <= 0.0) {
        if (slice(0.0) >= slice(p[m])) p[m] = 0.0;
        continue;
      }
      // Beyond t_ub the own term's net slope is negative and the cross
      // terms only fall, so the argmax is inside [0, t_ub].
      double hi = cap[m];
      if (slice.lambda > 0.0) {
        const double t_ub = slice.a_own / slice.lambda - 1.0 / slice.slope;
        hi = std::min(hi, t_ub);
      }
      if (hi <= 0.0) {
        if (slice(0.0) >= slice(p[m])) p[m] = 0.0;
        continue;
      }
      auto [t, ft] = slice_max(slice, hi, power_tol);
      if (ft > slice(p[m])) p[m] = t;
    }
    const double f_now = slot_objective(g, a, lambda, p);
    if (f_now - f_prev <= 1e-10 * std::max(1.0, std::abs(f_now))) {
      f_prev = std::max(f_prev, f_now);
      break;
    }
    f_prev = f_now;
  }
  return f_prev;
}

PowerOpt optimize_powers_impl(const LinkGains& gains,
                              const Eigen::Vector3d& weights,
                              const Eigen::Vector3d& lambda,
                              const Eigen::Vector3d& p_cap, int n_subcarriers,
                              double power_tol, bool polish) {
  const Eigen::Vector3d a = weights * rate_scale(n_subcarriers);
  const Eigen::Matrix3d& g = gains.g;

  // Separable interference-free bound; meeting it ends the search early.
  double ub = 0.0;
  for (int m = 0; m < 3; ++m) {
    ub += single_link_max(g(m, m), a[m], lambda[m], p_cap[m]).value;
  }

  // Coarse tolerance scaled to the largest cap, refined only at the end.
  const double cap_max = p_cap.maxCoeff();
  const double coarse_tol = std::max(power_tol, 1e-3 * std::max(cap_max, 1.0));

  PowerOpt best;
  best.objective = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < 4; ++s) {
    Eigen::Vector3d p = Eigen::Vector3d::Zero();
    if (s > 0) p[s - 1] = p_cap[s - 1];
    const double f = coord_ascent(g, a, lambda, p_cap, coarse_tol, p);
    if (f > best.objective) {
      best.objective = f;
      best.powers = p;
    }
    if (best.objective >= ub - 1e-12) break;
  }
  if (polish && coarse_tol > power_tol) {
    Eigen::Vector3d p = best.powers;
    const double f = coord_ascent(g, a, lambda, p_cap, power_tol, p);
    if (f > best.objective) {
      best.objective = f;
      best.powers = p;
    }
  }
  return best;
}

}  // namespace

double user_sinr(const LinkGains& gains, const Eigen::Vector3d& powers,
                 int m) {
  double interf = 1.0;
  for (int j = 0; j < 3; ++j) {
    if (j != m) interf += powers[j] * gains.g(j, m);
  }
  return powers[m] * gains.g(m, m) / interf;
}

double user_rate(const LinkGains& gains, const Eigen::Vector3d& powers, int m,
                 int n_subcarriers) {
  return rate_scale(n_subcarriers) *
         std::log1p(user_sinr(gains, powers, m));
}

double waterfilling_power(double g_eff, double weight, double lambda,
                          int n_subcarriers) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("waterfilling requires lambda > 0");
  }
  if (!(g_eff > 0.0)) {
    throw std::invalid_argument("waterfilling requires g_eff > 0");
  }
  if (weight < 0.0) {
    throw std::invalid_argument("waterfilling requires weight >= 0");
  }
  const double level = weight / (lambda * n_subcarriers * kLn2);
  return std::max(0.0, level - 1.0 / g_eff);
}

SingleLinkOpt single_link_max(double gain, double a_coeff, double lambda,
                              double cap) {
  SingleLinkOpt out;
  if (gain <= 0.0 || a_coeff <= 0.0 || cap <= 0.0) return out;
  double t;
  if (lambda <= 0.0) {
    t = cap;
  } else {
    t = std::clamp(a_coeff / lambda - 1.0 / gain, 0.0, cap);
  }
  out.power = t;
  out.value = a_coeff * std::log1p(gain * t) - lambda * t;
  if (out.value < 0.0) {
    out.power = 0.0;
    out.value = 0.0;
  }
  return out;
}

PowerOpt optimize_powers_fixed_users(const LinkGains& gains,
                                     const Eigen::Vector3d& weights,
                                     const Eigen::Vector3d& lambda,
                                     const Eigen::Vector3d& p_cap,
                                     int n_subcarriers, double power_tol,
                                     bool refine) {
  return optimize_powers_impl(gains, weights, lambda, p_cap, n_subcarriers,
                              power_tol, refine);
}

SlotSolution per_sc_subproblem(
    const ScGains& gains, const Eigen::MatrixXd& weights,
    const Eigen::Vector3d& lambda, const Eigen::Vector3d& p_cap,
    int n_subcarriers, const std::array<std::vector<int>, 3>* candidates,
    const std::array<int, 3>* seed_triple) {
  const int n_users = static_cast<int>(gains.by_cell[0].cols());
  std::array<std::vector<int>, 3> cand;
  if (candidates != nullptr) {
    cand = *candidates;
    for (int m = 0; m < 3; ++m) {
      if (cand[m].empty()) {
        throw std::invalid_argument("per_sc_subproblem: empty candidate list");
      }
    }
  } else {
    for (int m = 0; m < 3; ++m) {
      cand[m].resize(n_users);
      for (int k = 0; k < n_users; ++k) cand[m][k] = k;
    }
  }

  const double scale = rate_scale(n_subcarriers);
  Eigen::MatrixXd bounds(3, n_users);
  for (int m = 0; m < 3; ++m) {
    for (int k = 0; k < n_users; ++k) {
      bounds(m, k) = single_link_max(gains.by_cell[m](m, k),
                                     weights(m, k) * scale, lambda[m],
                                     p_cap[m])
                         .value;
    }
  }

  auto eval = [&](const std::array<int, 3>& triple) {
    SlotSolution s;
    for (int m = 0; m < 3; ++m) {
      s.weights[m] = weights(m, triple[m]);
      for (int j = 0; j < 3; ++j) {
        s.gains.g(j, m) = gains.by_cell[m](j, triple[m]);
      }
    }
    const PowerOpt po =
        optimize_powers_fixed_users(s.gains, s.weights, lambda, p_cap,
                                    n_subcarriers, 1e-6, false);
    s.powers = po.powers;
    s.objective = po.objective;
    return s;
  };

  SlotSolution best = prune_triple_search(cand, bounds, eval, seed_triple);
  if (!std::isfinite(best.objective)) {
    // No candidate triple (some cell's list is empty): silent slot.
    best = SlotSolution{};
    return best;
  }
  // Polish the winner at full precision.
  const PowerOpt po =
      optimize_powers_fixed_users(best.gains, best.weights, lambda, p_cap,
                                  n_subcarriers, 1e-6);
  if (po.objective > best.objective) {
    best.powers = po.powers;
    best.objective = po.objective;
  }
  return best;
}

namespace {

struct PrimalEval {
  double utility = 0.0;
  Eigen::Vector3d used = Eigen::Vector3d::Zero();
};

// Rescales per-BS overshoot away and evaluates the true utility.
PrimalEval evaluate_primal(std::vector<SlotSolution>& slots,
                           const Eigen::Vector3d& p_tot, int n_subcarriers) {
  Eigen::Vector3d used = Eigen::Vector3d::Zero();
  for (const SlotSolution& s : slots) used += s.powers;
  Eigen::Vector3d scale = Eigen::Vector3d::Ones();
  for (int m = 0; m < 3; ++m) {
    if (used[m] > p_tot[m] && used[m] > 0.0) scale[m] = p_tot[m] / used[m];
  }
  PrimalEval out;
  for (SlotSolution& s : slots) {
    s.powers = s.powers.cwiseProduct(scale);
    out.used += s.powers;
    for (int m = 0; m < 3; ++m) {
      out.utility +=
          s.weights[m] * user_rate(s.gains, s.powers, m, n_subcarriers);
    }
  }
  return out;
}

}  // namespace

MasterResult dual_master(int n_slots, const SlotSolver& solver,
                         const Eigen::Vector3d& p_tot, int n_subcarriers,
                         const DualOptions& opts) {
  MasterResult res;
  if (n_slots <= 0) return res;
  if (p_tot.maxCoeff() <= 0.0) {
    // Nothing to allocate; the zero solution is optimal.
    res.slots.assign(n_slots, SlotSolution{});
    for (int i = 0; i < n_slots; ++i) {
      res.slots[i] = solver(i, Eigen::Vector3d::Ones());
      res.slots[i].powers.setZero();
      res.slots[i].objective = 0.0;
    }
    return res;
  }

  const double p_floor = 1e-12 * p_tot.maxCoeff();
  Eigen::Vector3d lambda0;
  for (int m = 0; m < 3; ++m) {
    lambda0[m] = 3.0 / (std::max(p_tot[m], p_floor) * kLn2);
  }

  Eigen::Vector3d c = opts.center_scale * lambda0;
  Eigen::Matrix3d shape = Eigen::Matrix3d::Zero();
  if (opts.has_warm) {
    c = opts.warm_lambda.cwiseMax(0.0);
    for (int m = 0; m < 3; ++m) {
      const double r =
          opts.warm_radius * std::max(c[m], 0.5 * lambda0[m]) + lambda0[m];
      shape(m, m) = r * r;
    }
  } else {
    for (int m = 0; m < 3; ++m) {
      const double r = opts.radius_scale * lambda0[m];
      shape(m, m) = r * r;
    }
  }
  const double det0 = shape.determinant();

  const int n_dim = 3;
  double best_dual = std::numeric_limits<double>::infinity();
  double best_primal = -std::numeric_limits<double>::infinity();
  std::vector<SlotSolution> best_slots;
  Eigen::Vector3d best_used = Eigen::Vector3d::Zero();
  Eigen::Vector3d best_lambda = c;

  std::vector<SlotSolution> slots(n_slots);

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    res.iterations = iter + 1;
    Eigen::Vector3d grad;
    double depth = 0.0;

    int neg = -1;
    for (int m = 0; m < 3; ++m) {
      if (c[m] < 0.0 && (neg < 0 || c[m] < c[neg])) neg = m;
    }
    if (neg >= 0) {
      // Feasibility cut toward lambda >= 0.
      grad = Eigen::Vector3d::Zero();
      grad[neg] = -1.0;
      depth = -c[neg];
    } else {
      for (int i = 0; i < n_slots; ++i) slots[i] = solver(i, c);
      double dual = c.dot(p_tot);
      Eigen::Vector3d spent = Eigen::Vector3d::Zero();
      for (const SlotSolution& s : slots) {
        dual += s.objective;
        spent += s.powers;
      }
      const PrimalEval pe = evaluate_primal(slots, p_tot, n_subcarriers);
      if (pe.utility > best_primal) {
        best_primal = pe.utility;
        best_slots = slots;
        best_used = pe.used;
      }
      if (dual < best_dual) {
        best_dual = dual;
        best_lambda = c;
      }
      res.history.push_back({c, dual, pe.utility});

      if (opts.gap_stop > 0.0 && best_primal > 0.0) {
        const double gap =
            (best_dual - best_primal) / std::max(best_dual, 1e-300);
        if (gap <= opts.gap_stop) break;
      }

      grad = p_tot - spent;  // subgradient of the dual at c
      const double gnorm = grad.norm();
      if (gnorm <= 0.0) {
        // Exact stationarity: the dual is minimized and the primal from
        // this iterate is optimal.
        break;
      }
      depth = dual - best_dual;  // deep objective cut, zero at a new best
    }

    const double gamma = std::sqrt(grad.dot(shape * grad));
    if (!(gamma > 0.0) || !std::isfinite(gamma)) break;
    double alpha = depth / gamma;
    if (alpha >= 1.0) break;     // cut excludes the whole ellipsoid
    if (alpha < 0.0) alpha = 0.0;

    const Eigen::Vector3d sg = shape * grad / gamma;
    const double nd = static_cast<double>(n_dim);
    c -= ((1.0 + nd * alpha) / (nd + 1.0)) * sg;
    shape = (nd * nd / (nd * nd - 1.0)) * (1.0 - alpha * alpha) *
            (shape - (2.0 * (1.0 + nd * alpha) /
                      ((nd + 1.0) * (1.0 + alpha))) *
                         (sg * sg.transpose()));
    shape = 0.5 * (shape + shape.transpose()).eval();

    const double det = shape.determinant();
    if (!(det > 0.0) ||
        std::sqrt(std::max(det, 0.0) / det0) < opts.volume_tol) {
      break;
    }
  }

  if (best_slots.empty()) {
    // Never reached a feasible iterate; fall back to the zero allocation.
    best_slots.assign(n_slots, SlotSolution{});
    best_primal = 0.0;
    best_dual = std::max(best_dual, 0.0);
  }

  res.lambda = best_lambda;
  res.dual_value = best_dual;
  res.primal_value = std::max(best_primal, 0.0);
  res.slots = std::move(best_slots);
  res.power_used = best_used;
  const double denom = std::max(std::abs(best_dual), 1e-300);
  res.rel_gap = std::max(0.0, (best_dual - res.primal_value) / denom);
  res.converged = res.rel_gap <= 0.05;

  if (opts.has_warm) {
    const double target = opts.gap_stop > 0.0 ? opts.gap_stop : 0.05;
    if (res.rel_gap > target) {
      // The warm ellipsoid may not have contained the optimum; redo the
      // solve wide and keep the tighter of the two bounds on each side.
      DualOptions wide = opts;
      wide.has_warm = false;
      MasterResult w = dual_master(n_slots, solver, p_tot, n_subcarriers, wide);
      w.iterations += res.iterations;
      w.history.insert(w.history.begin(), res.history.begin(),
                       res.history.end());
      if (res.primal_value > w.primal_value) {
        w.primal_value = res.primal_value;
        w.slots = std::move(res.slots);
        w.power_used = res.power_used;
      }
      if (res.dual_value < w.dual_value) {
        w.dual_value = res.dual_value;
        w.lambda = res.lambda;
      }
      const double d = std::max(std::abs(w.dual_value), 1e-300);
      w.rel_gap = std::max(0.0, (w.dual_value - w.primal_value) / d);
      w.converged = w.rel_gap <= 0.05;
      return w;
    }
  }
  return res;
}

}  // namespace ofdma
