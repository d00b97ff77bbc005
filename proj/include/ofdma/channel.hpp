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

#ifndef OFDMA_CHANNEL_HPP
#define OFDMA_CHANNEL_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "ofdma/rng.hpp"

namespace ofdma {

using Complex = std::complex<double>;

inline constexpr int kNumCells = 3;

struct SystemDims {
  int n_subcarriers = 64;   // N, must be even and positive
  int users_per_cell = 4;   // K, positive
  double noise_variance = 1.0;
  Eigen::Vector3d power_budget = Eigen::Vector3d::Zero();  // per BS

  void validate() const;  // throws std::invalid_argument
};

// Frequency response h^n_{j,(m,k)} from BS j to user k of cell m on
// subcarrier n. Stored dense; desk-scale systems are tiny.
class ChannelTensor {
 public:
  explicit ChannelTensor(const SystemDims& dims);

  Complex& at(int tx, int rx_cell, int user, int sc) {
    return data_[index(tx, rx_cell, user, sc)];
  }
  const Complex& at(int tx, int rx_cell, int user, int sc) const {
    return data_[index(tx, rx_cell, user, sc)];
  }

  // Normalized power gain |h|^2 / sigma^2.
  double gain(int tx, int rx_cell, int user, int sc) const {
    return std::norm(at(tx, rx_cell, user, sc)) / dims_.noise_variance;
  }

  const SystemDims& dims() const { return dims_; }

 private:
  std::size_t index(int tx, int rx_cell, int user, int sc) const;

  SystemDims dims_;
  std::vector<Complex> data_;
};

enum class Region : std::uint8_t { kCir, kCnir };

struct Geometry {
  double cell_radius = 500.0;       // R
  double site_distance = 600.0;     // D = 1.2R, BS spacing; discs overlap
  double attenuation_exponent = 2.0;
  double cir_radius_fraction = 0.5; // rho: CIR = within rho*R of the centroid
};

struct UserLayout {
  std::array<Eigen::Vector2d, kNumCells> bs_positions;
  // user_positions[m][k]: position of user k in cell m.
  std::array<std::vector<Eigen::Vector2d>, kNumCells> user_positions;
  std::array<std::vector<Region>, kNumCells> regions;
  Geometry geometry;
};

// Phase-uniform Rayleigh links: direct links CN(0,1), cross links CN(0,h).
ChannelTensor gen_symmetric_channels(const SystemDims& dims, double h,
                                     std::uint64_t seed);

// Distance-attenuated links d^(-alpha/2) * CN(0,1) for users dropped
// uniformly in each cell's disc; BSs at an equilateral triangle.
std::pair<ChannelTensor, UserLayout> gen_heterogeneous_channels(
    const SystemDims& dims, const Geometry& geometry, std::uint64_t seed);

// Labels each user CIR or CNIR by distance to the BS centroid.
std::array<std::vector<Region>, kNumCells> classify_regions(
    const UserLayout& layout, double rho);

// Transmit budget that produces the target average direct-link SNR in dB.
// Symmetric model: P = N * sigma^2 * 10^(snr/10); heterogeneous model
// references a cell-edge user at distance R: extra factor R^alpha.
double snr_to_power_symmetric(double snr_db, const SystemDims& dims);
double snr_to_power_heterogeneous(double snr_db, const SystemDims& dims,
                                  const Geometry& geometry);

}  // namespace ofdma

#endif
