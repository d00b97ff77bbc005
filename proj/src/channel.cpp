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

#include "ofdma/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ofdma {

void SystemDims::validate() const {
  if (n_subcarriers <= 0 || n_subcarriers % 2 != 0) {
    throw std::invalid_argument("n_subcarriers must be positive and even");
  }
  if (users_per_cell <= 0) {
    throw std::invalid_argument("users_per_cell must be positive");
  }
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("noise_variance must be positive");
  }
  for (int m = 0; m < kNumCells; ++m) {
    if (!(power_budget[m] >= 0.0)) {
      throw std::invalid_argument("power_budget must be nonnegative");
    }
  }
}

ChannelTensor::ChannelTensor(const SystemDims& dims) : dims_(dims) {
  dims_.validate();
  data_.assign(static_cast<std::size_t>(kNumCells) * kNumCells *
                   dims_.users_per_cell * dims_.n_subcarriers,
               Complex(0.0, 0.0));
}

std::size_t ChannelTensor::index(int tx, int rx_cell, int user, int sc) const {
  return ((static_cast<std::size_t>(tx) * kNumCells + rx_cell) *
              dims_.users_per_cell +
          user) *
             dims_.n_subcarriers +
         sc;
}

ChannelTensor gen_symmetric_channels(const SystemDims& dims, double h,
                                     std::uint64_t seed) {
  if (h < 0.0) throw std::invalid_argument("cross-link variance must be >= 0");
  ChannelTensor t(dims);
  Rng rng(seed);
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      const double var = (j == m) ? 1.0 : h;
      for (int k = 0; k < dims.users_per_cell; ++k) {
        for (int n = 0; n < dims.n_subcarriers; ++n) {
          // Draw even when var == 0 so h only scales values, never shifts
          // the stream: the h=0 tensor is the h=1 tensor with zeroed
          // cross links.
          const Complex z = rng.next_cgauss(1.0);
          t.at(j, m, k, n) = std::sqrt(var) * z;
        }
      }
    }
  }
  return t;
}

std::pair<ChannelTensor, UserLayout> gen_heterogeneous_channels(
    const SystemDims& dims, const Geometry& geometry, std::uint64_t seed) {
  if (!(geometry.cell_radius > 0.0) || !(geometry.site_distance > 0.0)) {
    throw std::invalid_argument("geometry lengths must be positive");
  }
  UserLayout layout;
  layout.geometry = geometry;

  // Equilateral triangle with side D, centroid at the origin.
  const double d = geometry.site_distance;
  const double circum = d / std::sqrt(3.0);
  for (int m = 0; m < kNumCells; ++m) {
    const double ang = 1.5707963267948966 + 2.0943951023931953 * m;
    layout.bs_positions[m] = circum * Eigen::Vector2d(std::cos(ang), std::sin(ang));
  }

  Rng rng(seed);
  for (int m = 0; m < kNumCells; ++m) {
    layout.user_positions[m].resize(dims.users_per_cell);
    for (int k = 0; k < dims.users_per_cell; ++k) {
      const double r = geometry.cell_radius * std::sqrt(rng.next_unit());
      const double phi = 6.283185307179586 * rng.next_unit();
      layout.user_positions[m][k] =
          layout.bs_positions[m] + r * Eigen::Vector2d(std::cos(phi), std::sin(phi));
    }
  }
  layout.regions = classify_regions(layout, geometry.cir_radius_fraction);

  ChannelTensor t(dims);
  const double half_alpha = 0.5 * geometry.attenuation_exponent;
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      for (int k = 0; k < dims.users_per_cell; ++k) {
        const double dist =
            (layout.user_positions[m][k] - layout.bs_positions[j]).norm();
        const double att = std::pow(std::max(dist, 1e-9), -half_alpha);
        for (int n = 0; n < dims.n_subcarriers; ++n) {
          t.at(j, m, k, n) = att * rng.next_cgauss(1.0);
        }
      }
    }
  }
  return {std::move(t), std::move(layout)};
}

std::array<std::vector<Region>, kNumCells> classify_regions(
    const UserLayout& layout, double rho) {
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  for (int m = 0; m < kNumCells; ++m) centroid += layout.bs_positions[m];
  centroid /= static_cast<double>(kNumCells);

  const double cut = rho * layout.geometry.cell_radius;
  std::array<std::vector<Region>, kNumCells> out;
  for (int m = 0; m < kNumCells; ++m) {
    out[m].resize(layout.user_positions[m].size());
    for (std::size_t k = 0; k < layout.user_positions[m].size(); ++k) {
      const double dist = (layout.user_positions[m][k] - centroid).norm();
      out[m][k] = dist <= cut ? Region::kCir : Region::kCnir;
    }
  }
  return out;
}

double snr_to_power_symmetric(double snr_db, const SystemDims& dims) {
  return dims.n_subcarriers * dims.noise_variance *
         std::pow(10.0, snr_db / 10.0);
}

double snr_to_power_heterogeneous(double snr_db, const SystemDims& dims,
                                  const Geometry& geometry) {
  return snr_to_power_symmetric(snr_db, dims) *
         std::pow(geometry.cell_radius, geometry.attenuation_exponent);
}

}  // namespace ofdma
