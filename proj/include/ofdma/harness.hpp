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

#ifndef OFDMA_HARNESS_HPP
#define OFDMA_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ofdma/channel.hpp"
#include "ofdma/schemes.hpp"

namespace ofdma {

enum class ModelKind { kSymmetric, kHeterogeneous };

struct ExperimentConfig {
  ModelKind model = ModelKind::kSymmetric;
  double h = 1.0;     // symmetric cross-link variance
  Geometry geometry;  // heterogeneous model parameters
  int n_subcarriers = 64;
  int users_per_cell = 4;
  double noise_variance = 1.0;
  std::vector<double> snr_grid_db = {0, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  int trials = 50;
  std::uint64_t master_seed = 1;
  std::vector<SchemeId> schemes = {SchemeId::kTraditional};
  SchemeOptions scheme_opts;
  int threads = 1;

  void validate() const;  // throws std::invalid_argument
};

struct ResultRow {
  SchemeId scheme = SchemeId::kTraditional;
  double snr_db = 0.0;
  int trials = 0;  // trials aggregated (failed trials are dropped)
  double mean_sum_rate = 0.0;
  double std_error = 0.0;
  double mean_dual_gap = 0.0;
  double mean_ia_leakage = 0.0;
};

struct ResultTable {
  std::vector<ResultRow> rows;  // sorted by (scheme, snr_db)
};

// Runs every (scheme, SNR, trial) cell: one channel realization per trial
// (substream of the master seed), schemes swept over the ascending SNR
// grid with warm starts, IA precoders cached per trial. Trials can run on
// several threads; results are identical for any thread count.
ResultTable run_experiment(const ExperimentConfig& config);

// "a:step:b" (inclusive) or comma-separated values.
std::vector<double> parse_snr_grid(const std::string& text);

std::string csv_string(const ResultTable& table);
void emit_csv(const ResultTable& table, const std::string& path);

// SVG line chart, one polyline per scheme with error bars.
void emit_plot(const ResultTable& table, const std::string& path);

}  // namespace ofdma

#endif
