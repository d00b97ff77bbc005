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

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ofdma/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"three-cell OFDMA downlink resource allocation simulator"};
  app.set_config("--config", "", "read options from an INI file");

  std::string model = "symmetric";
  double h = 1.0;
  int n = 64;
  int k = 4;
  double sigma2 = 1.0;
  std::string snr = "0:5:50";
  int trials = 50;
  std::uint64_t seed = 1;
  std::string schemes = "traditional,ia_perfect,ia_ri";
  std::string out = "results.csv";
  std::string plot;
  int threads = 1;

  ofdma::Geometry geo;
  ofdma::SchemeOptions sopts;
  std::string ia_select = "best_utility";

  app.add_option("--model", model, "channel model: symmetric | heterogeneous")
      ->check(CLI::IsMember({"symmetric", "heterogeneous"}));
  app.add_option("--hvar,--cross-var", h,
                 "cross-link variance h (symmetric model)");
  app.add_option("--n", n, "number of subcarriers (even)");
  app.add_option("--k", k, "users per cell");
  app.add_option("--sigma2", sigma2, "noise variance");
  app.add_option("--snr", snr, "SNR grid in dB: a:step:b or comma list");
  app.add_option("--trials", trials, "independent channel realizations");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--schemes", schemes,
                 "comma list of traditional, ia_perfect, ia_ri, hybrid, ofp");
  app.add_option("--out", out, "output CSV path");
  app.add_option("--plot", plot, "optional SVG chart path");
  app.add_option("--threads", threads, "worker threads for trials");

  app.add_option("--radius", geo.cell_radius, "cell radius R");
  app.add_option("--site-distance", geo.site_distance, "BS spacing D");
  app.add_option("--alpha", geo.attenuation_exponent, "attenuation exponent");
  app.add_option("--rho", geo.cir_radius_fraction,
                 "interior-region radius as a fraction of R");

  app.add_option("--ia-max-iters", sopts.ia.max_iters,
                 "alignment iterations per pair");
  app.add_option("--ia-tol", sopts.ia.leakage_tol, "leakage stop threshold");
  app.add_option("--ia-select", ia_select,
                 "iterate choice: last | best_utility")
      ->check(CLI::IsMember({"last", "best_utility"}));
  app.add_option("--ia-ref-power", sopts.ia.reference_power,
                 "reference per-stream power for best_utility");
  app.add_option("--ia-snapshots", sopts.ia.snapshot_powers,
                 "operating-point snapshot powers")
      ->delimiter(',');
  app.add_option("--ia-refine-iters", sopts.ia.max_sinr_iters,
                 "max-SINR refinement sweeps per snapshot");
  app.add_option("--ia-polish-iters", sopts.ia.polish_iters,
                 "simplex polish sweeps per snapshot");
  app.add_flag("--ia-preselect", sopts.ia_preselect,
               "restrict pair slots to the strongest users");
  app.add_option("--ia-preselect-count", sopts.ia_preselect_count,
                 "users kept per cell when preselecting");
  app.add_option("--dual-max-iters", sopts.dual.max_iters,
                 "ellipsoid iteration cap");
  app.add_option("--dual-gap-stop", sopts.dual.gap_stop,
                 "relative duality gap early stop (0 disables)");
  app.add_option("--dual-volume-tol", sopts.dual.volume_tol,
                 "ellipsoid volume stop ratio");

  CLI11_PARSE(app, argc, argv);

  ofdma::ExperimentConfig config;
  config.model = model == "symmetric" ? ofdma::ModelKind::kSymmetric
                                      : ofdma::ModelKind::kHeterogeneous;
  config.h = h;
  config.geometry = geo;
  config.n_subcarriers = n;
  config.users_per_cell = k;
  config.noise_variance = sigma2;
  config.trials = trials;
  config.master_seed = seed;
  config.threads = threads;
  config.scheme_opts = sopts;
  config.scheme_opts.ia.select = ia_select == "last"
                                     ? ofdma::IaSelect::kLast
                                     : ofdma::IaSelect::kBestUtility;

  try {
    config.snr_grid_db = ofdma::parse_snr_grid(snr);
    config.schemes.clear();
    std::istringstream is(schemes);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      if (tok.empty()) continue;
      auto id = ofdma::parse_scheme(tok);
      if (!id) {
        std::cerr << "unknown scheme: " << tok << "\n";
        return 2;
      }
      config.schemes.push_back(*id);
    }

    const ofdma::ResultTable table = ofdma::run_experiment(config);
    ofdma::emit_csv(table, out);
    if (!plot.empty()) ofdma::emit_plot(table, plot);

    // Console summary: one line per row.
    std::printf("%-12s %8s %8s %14s %12s %10s\n", "scheme", "snr_db",
                "trials", "mean_sum_rate", "std_error", "dual_gap");
    for (const auto& r : table.rows) {
      std::printf("%-12s %8.4g %8d %14.6g %12.4g %10.4g\n",
                  std::string(ofdma::scheme_name(r.scheme)).c_str(), r.snr_db,
                  r.trials, r.mean_sum_rate, r.std_error, r.mean_dual_gap);
    }
    std::printf("wrote %s\n", out.c_str());
    if (!plot.empty()) std::printf("wrote %s\n", plot.c_str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
