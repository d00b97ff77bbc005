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

#include "ofdma/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ofdma {

namespace {

int log_level() {
  const char* env = std::getenv("OFDMA_SIM_LOG");
  if (env == nullptr) return 1;
  const std::string v(env);
  if (v == "quiet") return 0;
  if (v == "debug") return 2;
  return 1;
}

std::mutex log_mutex;

void log_line(int level, const std::string& msg) {
  if (log_level() < level) return;
  std::lock_guard<std::mutex> lock(log_mutex);
  std::cerr << "[ofdma_sim] " << msg << "\n";
}

struct CellMetrics {
  double sum_rate = 0.0;
  double dual_gap = 0.0;
  double ia_leakage = 0.0;
  bool ok = false;
};

}  // namespace

void ExperimentConfig::validate() const {
  SystemDims dims;
  dims.n_subcarriers = n_subcarriers;
  dims.users_per_cell = users_per_cell;
  dims.noise_variance = noise_variance;
  dims.validate();
  if (snr_grid_db.empty()) {
    throw std::invalid_argument("snr grid must be non-empty");
  }
  for (std::size_t i = 1; i < snr_grid_db.size(); ++i) {
    if (snr_grid_db[i] <= snr_grid_db[i - 1]) {
      throw std::invalid_argument("snr grid must be strictly increasing");
    }
  }
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  if (threads <= 0) throw std::invalid_argument("threads must be positive");
  if (schemes.empty()) {
    throw std::invalid_argument("at least one scheme required");
  }
  for (SchemeId s : schemes) {
    if (s == SchemeId::kHybrid && model != ModelKind::kHeterogeneous) {
      throw std::invalid_argument("hybrid requires the heterogeneous model");
    }
  }
}

ResultTable run_experiment(const ExperimentConfig& config) {
  config.validate();

  // Canonical scheme order, duplicates dropped.
  std::vector<SchemeId> schemes;
  for (SchemeId id : {SchemeId::kTraditional, SchemeId::kIaPerfect,
                      SchemeId::kIaRi, SchemeId::kHybrid, SchemeId::kOfp}) {
    for (SchemeId s : config.schemes) {
      if (s == id) {
        schemes.push_back(id);
        break;
      }
    }
  }

  const int n_schemes = static_cast<int>(schemes.size());
  const int n_snr = static_cast<int>(config.snr_grid_db.size());
  const int n_trials = config.trials;

  SystemDims dims;
  dims.n_subcarriers = config.n_subcarriers;
  dims.users_per_cell = config.users_per_cell;
  dims.noise_variance = config.noise_variance;

  const bool wants_ia =
      std::any_of(schemes.begin(), schemes.end(), [](SchemeId s) {
        return s == SchemeId::kIaPerfect || s == SchemeId::kIaRi ||
               s == SchemeId::kHybrid;
      });

  std::vector<CellMetrics> metrics(
      static_cast<std::size_t>(n_trials) * n_schemes * n_snr);
  auto cell = [&](int t, int s, int q) -> CellMetrics& {
    return metrics[(static_cast<std::size_t>(t) * n_schemes + s) * n_snr + q];
  };

  log_line(1, "running " + std::to_string(n_trials) + " trials, " +
                  std::to_string(n_schemes) + " schemes, " +
                  std::to_string(n_snr) + " SNR points");

  auto run_trial = [&](int trial) {
    Rng sub = Rng::substream(config.master_seed, trial);
    const std::uint64_t chan_seed = sub.next_u64();

    ChannelTensor tensor(dims);
    UserLayout layout;
    if (config.model == ModelKind::kSymmetric) {
      tensor = gen_symmetric_channels(dims, config.h, chan_seed);
    } else {
      auto pair = gen_heterogeneous_channels(dims, config.geometry, chan_seed);
      tensor = std::move(pair.first);
      layout = std::move(pair.second);
    }

    std::optional<IaPairCache> cache;
    if (wants_ia) {
      cache.emplace(tensor, build_pairing(config.n_subcarriers),
                    config.scheme_opts.ia);
    }

    const Eigen::MatrixXd weights =
        Eigen::MatrixXd::Ones(3, config.users_per_cell);

    for (int s = 0; s < n_schemes; ++s) {
      SchemeResult prev;
      bool have_prev = false;
      for (int q = 0; q < n_snr; ++q) {
        const double snr = config.snr_grid_db[q];
        const double p =
            config.model == ModelKind::kSymmetric
                ? snr_to_power_symmetric(snr, dims)
                : snr_to_power_heterogeneous(snr, dims, config.geometry);
        const Eigen::Vector3d p_tot = Eigen::Vector3d::Constant(p);
        try {
          SchemeResult res;
          const SchemeResult* warm = have_prev ? &prev : nullptr;
          switch (schemes[s]) {
            case SchemeId::kTraditional:
              res = run_traditional(tensor, weights, p_tot,
                                    config.scheme_opts, warm);
              break;
            case SchemeId::kIaPerfect:
              res = run_ia(tensor, weights, p_tot, false, config.scheme_opts,
                           &*cache, warm);
              break;
            case SchemeId::kIaRi:
              res = run_ia(tensor, weights, p_tot, true, config.scheme_opts,
                           &*cache, warm);
              break;
            case SchemeId::kHybrid:
              res = run_hybrid(tensor, layout, weights, p_tot,
                               config.scheme_opts, &*cache, warm);
              break;
            case SchemeId::kOfp:
              res = run_ofp(tensor, weights, p_tot);
              break;
          }
          CellMetrics& c = cell(trial, s, q);
          c.sum_rate = res.utility;
          c.dual_gap = res.rel_gap;
          c.ia_leakage = res.mean_ia_leakage;
          c.ok = true;
          if (log_level() >= 2) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "trial %d %s snr %.4g: rate %.6g gap %.3g "
                          "iters %d",
                          trial, std::string(scheme_name(schemes[s])).c_str(),
                          snr, res.utility, res.rel_gap, res.dual_iterations);
            log_line(2, buf);
          }
          prev = std::move(res);
          have_prev = true;
        } catch (const std::exception& e) {
          log_line(0, "trial " + std::to_string(trial) + " scheme " +
                          std::string(scheme_name(schemes[s])) +
                          " failed: " + e.what());
          have_prev = false;
        }
      }
    }
  };

  if (config.threads <= 1 || n_trials <= 1) {
    for (int t = 0; t < n_trials; ++t) run_trial(t);
  } else {
    std::atomic<int> next(0);
    auto worker = [&]() {
      for (;;) {
        const int t = next.fetch_add(1);
        if (t >= n_trials) return;
        run_trial(t);
      }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min(config.threads, n_trials);
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  ResultTable table;
  for (int s = 0; s < n_schemes; ++s) {
    for (int q = 0; q < n_snr; ++q) {
      ResultRow row;
      row.scheme = schemes[s];
      row.snr_db = config.snr_grid_db[q];
      double sum = 0.0, sum_sq = 0.0, gap = 0.0, leak = 0.0;
      int n_ok = 0;
      for (int t = 0; t < n_trials; ++t) {
        const CellMetrics& c = cell(t, s, q);
        if (!c.ok) continue;
        ++n_ok;
        sum += c.sum_rate;
        sum_sq += c.sum_rate * c.sum_rate;
        gap += c.dual_gap;
        leak += c.ia_leakage;
      }
      row.trials = n_ok;
      if (n_ok > 0) {
        row.mean_sum_rate = sum / n_ok;
        row.mean_dual_gap = gap / n_ok;
        row.mean_ia_leakage = leak / n_ok;
        if (n_ok > 1) {
          const double var =
              std::max(0.0, (sum_sq - sum * sum / n_ok) / (n_ok - 1));
          row.std_error = std::sqrt(var / n_ok);
        }
      } else {
        row.mean_sum_rate = std::nan("");
        row.mean_dual_gap = std::nan("");
        row.mean_ia_leakage = std::nan("");
        row.std_error = std::nan("");
      }
      table.rows.push_back(row);
    }
  }
  log_line(1, "experiment complete: " + std::to_string(table.rows.size()) +
                  " result rows");
  return table;
}

std::vector<double> parse_snr_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double a = 0, step = 0, b = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> a >> c1 >> step >> c2 >> b) || c1 != ':' || c2 != ':' ||
        step <= 0.0 || b < a) {
      throw std::invalid_argument("bad snr grid: " + text);
    }
    for (double v = a; v <= b + 1e-9; v += step) out.push_back(v);
    return out;
  }
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw std::invalid_argument("bad snr grid: " + text);
  return out;
}

std::string csv_string(const ResultTable& table) {
  if (table.rows.empty()) {
    throw std::invalid_argument("result table is empty");
  }
  std::string out =
      "scheme,snr_db,trials,mean_sum_rate,std_error,mean_dual_gap,"
      "mean_ia_leakage\n";
  char buf[256];
  for (const ResultRow& r : table.rows) {
    std::snprintf(buf, sizeof(buf), "%s,%.9g,%d,%.9g,%.9g,%.9g,%.9g\n",
                  std::string(scheme_name(r.scheme)).c_str(), r.snr_db,
                  r.trials, r.mean_sum_rate, r.std_error, r.mean_dual_gap,
                  r.mean_ia_leakage);
    out += buf;
  }
  return out;
}

void emit_csv(const ResultTable& table, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << csv_string(table);
}

}  // namespace ofdma
