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

#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "ofdma/channel.hpp"
#include "oracles.hpp"

using namespace ofdma;

namespace {

SystemDims dims(int n, int k) {
  SystemDims d;
  d.n_subcarriers = n;
  d.users_per_cell = k;
  return d;
}

}  // namespace

TEST_CASE("symmetric model: h=0 zeroes every cross link") {
  const ChannelTensor t = gen_symmetric_channels(dims(8, 2), 0.0, 7);
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      for (int k = 0; k < 2; ++k) {
        for (int n = 0; n < 8; ++n) {
          if (j == m) continue;
          CHECK(t.at(j, m, k, n) == Complex(0.0, 0.0));
        }
      }
    }
  }
}

TEST_CASE("symmetric model: direct-link power concentrates near 1") {
  const ChannelTensor t = gen_symmetric_channels(dims(64, 4), 1.0, 3);
  double sum = 0.0;
  int count = 0;
  for (int m = 0; m < kNumCells; ++m) {
    for (int k = 0; k < 4; ++k) {
      for (int n = 0; n < 64; ++n) {
        sum += std::norm(t.at(m, m, k, n));
        ++count;
      }
    }
  }
  CHECK(count == 768);
  CHECK(sum / count == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("symmetric model: cross-link variance tracks h") {
  const double h = 0.1;
  const ChannelTensor t = gen_symmetric_channels(dims(64, 4), h, 11);
  double sum = 0.0;
  int count = 0;
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      if (j == m) continue;
      for (int k = 0; k < 4; ++k) {
        for (int n = 0; n < 64; ++n) {
          sum += std::norm(t.at(j, m, k, n));
          ++count;
        }
      }
    }
  }
  // 3 standard errors of the mean of count unit-mean exponentials.
  const double se = h / std::sqrt(static_cast<double>(count));
  CHECK(std::abs(sum / count - h) < 3.0 * se);
}

TEST_CASE("symmetric model: same seed reproduces bitwise") {
  const ChannelTensor a = gen_symmetric_channels(dims(16, 3), 0.5, 42);
  const ChannelTensor b = gen_symmetric_channels(dims(16, 3), 0.5, 42);
  const ChannelTensor c = gen_symmetric_channels(dims(16, 3), 0.5, 43);
  bool identical = true;
  bool differs = false;
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      for (int k = 0; k < 3; ++k) {
        for (int n = 0; n < 16; ++n) {
          identical = identical && a.at(j, m, k, n) == b.at(j, m, k, n);
          differs = differs || a.at(j, m, k, n) != c.at(j, m, k, n);
        }
      }
    }
  }
  CHECK(identical);
  CHECK(differs);
}

TEST_CASE("symmetric model: invalid dims rejected") {
  CHECK_THROWS_AS(gen_symmetric_channels(dims(7, 2), 1.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(gen_symmetric_channels(dims(0, 2), 1.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(gen_symmetric_channels(dims(8, 0), 1.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(gen_symmetric_channels(dims(8, 2), -0.5, 1),
                  std::invalid_argument);
}

TEST_CASE("heterogeneous model: mean link power follows d^-alpha") {
  Geometry geo;
  const auto [t, layout] = gen_heterogeneous_channels(dims(2048, 1), geo, 5);
  for (int m = 0; m < kNumCells; ++m) {
    const double d = (layout.user_positions[m][0] - layout.bs_positions[m])
                         .norm();
    double sum = 0.0;
    for (int n = 0; n < 2048; ++n) sum += std::norm(t.at(m, m, 0, n));
    const double expected = std::pow(d, -geo.attenuation_exponent);
    CHECK(sum / 2048.0 == doctest::Approx(expected).epsilon(0.10));
  }
}

TEST_CASE("heterogeneous model: alpha=0 gives unit-mean gains") {
  Geometry geo;
  geo.attenuation_exponent = 0.0;
  const auto [t, layout] = gen_heterogeneous_channels(dims(256, 4), geo, 9);
  double sum = 0.0;
  int count = 0;
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      for (int k = 0; k < 4; ++k) {
        for (int n = 0; n < 256; ++n) {
          sum += std::norm(t.at(j, m, k, n));
          ++count;
        }
      }
    }
  }
  const double se = 1.0 / std::sqrt(static_cast<double>(count));
  CHECK(std::abs(sum / count - 1.0) < 3.0 * se);
}

TEST_CASE("heterogeneous model: scaled gains pass a KS test against Exp(1)") {
  Geometry geo;
  const auto [t, layout] = gen_heterogeneous_channels(dims(1024, 4), geo, 17);
  std::vector<double> samples;
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      for (int k = 0; k < 4; ++k) {
        const double d = (layout.user_positions[m][k] - layout.bs_positions[j])
                             .norm();
        const double scale = std::pow(d, geo.attenuation_exponent);
        for (int n = 0; n < 1024; ++n) {
          samples.push_back(std::norm(t.at(j, m, k, n)) * scale);
        }
      }
    }
  }
  REQUIRE(samples.size() >= 10000);
  const double stat = oracle::ks_stat_exp1(std::move(samples));
  // 1 percent significance for large n: D * sqrt(n) <= 1.628.
  CHECK(stat * std::sqrt(1024.0 * 36.0) < 1.628);
}

TEST_CASE("heterogeneous model: users stay inside their serving disc") {
  Geometry geo;
  const auto [t, layout] = gen_heterogeneous_channels(dims(4, 16), geo, 23);
  (void)t;
  for (int m = 0; m < kNumCells; ++m) {
    for (const auto& pos : layout.user_positions[m]) {
      CHECK((pos - layout.bs_positions[m]).norm() <=
            geo.cell_radius * (1.0 + 1e-12));
    }
  }
  // BS triangle side length equals the configured spacing.
  for (int m = 0; m < kNumCells; ++m) {
    const auto& a = layout.bs_positions[m];
    const auto& b = layout.bs_positions[(m + 1) % kNumCells];
    CHECK((a - b).norm() == doctest::Approx(geo.site_distance).epsilon(1e-12));
  }
}

TEST_CASE("heterogeneous model: deterministic per seed, rejects bad geometry") {
  Geometry geo;
  const auto [t1, l1] = gen_heterogeneous_channels(dims(8, 2), geo, 31);
  const auto [t2, l2] = gen_heterogeneous_channels(dims(8, 2), geo, 31);
  bool identical = true;
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      for (int k = 0; k < 2; ++k) {
        for (int n = 0; n < 8; ++n) {
          identical = identical && t1.at(j, m, k, n) == t2.at(j, m, k, n);
        }
      }
    }
  }
  CHECK(identical);
  for (int m = 0; m < kNumCells; ++m) {
    for (int k = 0; k < 2; ++k) {
      CHECK(l1.user_positions[m][k] == l2.user_positions[m][k]);
    }
  }
  Geometry bad = geo;
  bad.cell_radius = 0.0;
  CHECK_THROWS_AS(gen_heterogeneous_channels(dims(8, 2), bad, 1),
                  std::invalid_argument);
  bad = geo;
  bad.site_distance = -1.0;
  CHECK_THROWS_AS(gen_heterogeneous_channels(dims(8, 2), bad, 1),
                  std::invalid_argument);
}

TEST_CASE("region classification matches a direct distance rule") {
  Geometry geo;
  geo.site_distance = 1.2 * geo.cell_radius;
  const auto [t, layout] = gen_heterogeneous_channels(dims(2, 12), geo, 13);
  (void)t;
  const Eigen::Vector2d centroid =
      (layout.bs_positions[0] + layout.bs_positions[1] +
       layout.bs_positions[2]) /
      3.0;

  const double rho = 0.5;
  const auto labels = classify_regions(layout, rho);
  for (int m = 0; m < kNumCells; ++m) {
    REQUIRE(labels[m].size() == 12);
    for (int k = 0; k < 12; ++k) {
      const bool inside = (layout.user_positions[m][k] - centroid).norm() <=
                          rho * geo.cell_radius;
      CHECK((labels[m][k] == Region::kCir) == inside);
    }
  }
  // Generated layouts carry labels consistent with the classifier.
  const auto relabeled = classify_regions(layout, geo.cir_radius_fraction);
  for (int m = 0; m < kNumCells; ++m) {
    for (int k = 0; k < 12; ++k) {
      CHECK(layout.regions[m][k] == relabeled[m][k]);
    }
  }
}

TEST_CASE("region classification degenerate radii") {
  Geometry geo;
  const auto [t, layout] = gen_heterogeneous_channels(dims(2, 6), geo, 19);
  (void)t;
  const auto none = classify_regions(layout, 0.0);
  for (int m = 0; m < kNumCells; ++m) {
    for (const Region r : none[m]) CHECK(r == Region::kCnir);
  }
  UserLayout pinned = layout;
  pinned.user_positions[0][0] = (layout.bs_positions[0] +
                                 layout.bs_positions[1] +
                                 layout.bs_positions[2]) /
                                3.0;
  const auto labels = classify_regions(pinned, 0.5);
  CHECK(labels[0][0] == Region::kCir);
}

TEST_CASE("snr-to-power mappings") {
  SystemDims d = dims(64, 4);
  d.noise_variance = 2.0;
  CHECK(snr_to_power_symmetric(0.0, d) == doctest::Approx(64.0 * 2.0));
  CHECK(snr_to_power_symmetric(10.0, d) == doctest::Approx(64.0 * 2.0 * 10.0));

  Geometry unit;
  unit.cell_radius = 1.0;
  unit.attenuation_exponent = 2.0;
  CHECK(snr_to_power_heterogeneous(10.0, d, unit) ==
        doctest::Approx(snr_to_power_symmetric(10.0, d)));

  Geometry geo;  // R = 500, alpha = 2: budget scales by R^alpha
  CHECK(snr_to_power_heterogeneous(0.0, d, geo) ==
        doctest::Approx(64.0 * 2.0 * 500.0 * 500.0));
}
