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
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "ofdma/ia.hpp"
#include "oracles.hpp"

using namespace ofdma;

namespace {

Complex cn(std::mt19937_64& g) {
  std::normal_distribution<double> n(0.0, 1.0 / std::sqrt(2.0));
  const double re = n(g);
  const double im = n(g);
  return {re, im};
}

PairedChannelSet random_set(std::uint64_t seed) {
  std::mt19937_64 g(seed);
  PairedChannelSet ch;
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      ch.h[j][m] = Eigen::Vector2cd(cn(g), cn(g));
    }
  }
  return ch;
}

}  // namespace

TEST_CASE("pairing splits the band at N/2") {
  const Pairing p8 = build_pairing(8);
  REQUIRE(p8.pairs.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(p8.pairs[i][0] == i);
    CHECK(p8.pairs[i][1] == i + 4);
  }

  const Pairing p2 = build_pairing(2);
  REQUIRE(p2.pairs.size() == 1);
  CHECK(p2.pairs[0][0] == 0);
  CHECK(p2.pairs[0][1] == 1);

  const Pairing p64 = build_pairing(64);
  std::vector<int> seen(64, 0);
  for (const auto& pr : p64.pairs) {
    ++seen[pr[0]];
    ++seen[pr[1]];
  }
  for (int n = 0; n < 64; ++n) CHECK(seen[n] == 1);

  CHECK_THROWS_AS(build_pairing(7), std::invalid_argument);
  CHECK_THROWS_AS(build_pairing(0), std::invalid_argument);
}

TEST_CASE("paired channel assembly matches direct tensor lookup") {
  SystemDims dims;
  dims.n_subcarriers = 8;
  dims.users_per_cell = 3;
  dims.noise_variance = 1.7;
  const ChannelTensor t = gen_symmetric_channels(dims, 0.6, 77);
  const Pairing pairing = build_pairing(8);
  const std::array<int, 3> triple = {2, 0, 1};
  const int pair_index = 3;
  const PairedChannelSet ch = paired_channels(t, pairing, pair_index, triple);

  CHECK(ch.sigma2 == doctest::Approx(1.7));
  const auto& pr = pairing.pairs[pair_index];
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      CHECK(ch.h[j][m](0) == t.at(j, m, triple[m], pr[0]));
      CHECK(ch.h[j][m](1) == t.at(j, m, triple[m], pr[1]));
    }
  }
}

TEST_CASE("least eigenvector closed form") {
  Eigen::Matrix2cd q;
  q << 2.0, 0.0, 0.0, 1.0;
  const Eigen::Vector2cd v = least_eigvec_2x2(q);
  CHECK(std::abs(v(0)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(v(1)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v(1).real() >= 0.0);
  CHECK(v(1).imag() == doctest::Approx(0.0).epsilon(1e-12));

  const Eigen::Vector2cd vi = least_eigvec_2x2(Eigen::Matrix2cd::Identity());
  CHECK(vi.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((Eigen::Matrix2cd::Identity() * vi - vi).norm() ==
        doctest::Approx(0.0).epsilon(1e-12));

  Eigen::Matrix2cd h;  // eigenvalues 1 and 3
  h << Complex(2.0, 0.0), Complex(0.0, 1.0), Complex(0.0, -1.0),
      Complex(2.0, 0.0);
  const Eigen::Vector2cd vh = least_eigvec_2x2(h);
  CHECK(vh.norm() == doctest::Approx(1.0).epsilon(1e-12));
  const double rayleigh = (vh.adjoint() * h * vh)(0).real();
  CHECK(rayleigh == doctest::Approx(1.0).epsilon(1e-10));

  // Random Hermitian matrices: Rayleigh quotient equals the smaller root.
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex a = cn(g);
    const Complex b = cn(g);
    const Complex c = cn(g);
    Eigen::Matrix2cd m;
    m << std::norm(a) + std::norm(b), std::conj(a) * c + std::conj(b),
        a * std::conj(c) + b, std::norm(c) + 1.0;
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m);
    const Eigen::Vector2cd vm = least_eigvec_2x2(m);
    const double quot = (vm.adjoint() * m * vm)(0).real();
    CHECK(quot == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-9));
  }

  Eigen::Matrix2cd bad;
  bad << 1.0, Complex(0.3, 0.2), Complex(0.3, 0.3), 2.0;
  CHECK_THROWS_AS(least_eigvec_2x2(bad), std::invalid_argument);
}

TEST_CASE("least eigenvector rejects complex diagonals") {
  Eigen::Matrix2cd bad = Eigen::Matrix2cd::Identity();
  bad(0, 0) = Complex(1.0, 0.5);
  CHECK_THROWS_AS(least_eigvec_2x2(bad), std::invalid_argument);
}

TEST_CASE("leakage descent: zero cross channels align immediately") {
  PairedChannelSet ch = random_set(101);
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      if (j != m) ch.h[j][m].setZero();
    }
  }
  IaOptions opts;
  const IaSolution sol = distributed_ia(ch, opts);
  CHECK(sol.leakage == 0.0);
  CHECK(sol.iterations <= 2);
  REQUIRE(!sol.history.empty());
  CHECK(sol.history.back() <= opts.leakage_tol);
}

TEST_CASE("leakage descent: identity cross channels reach alignment") {
  PairedChannelSet ch;
  ch.h[0][0] = Eigen::Vector2cd(Complex(1.3, 0.2), Complex(0.4, -0.9));
  ch.h[1][1] = Eigen::Vector2cd(Complex(-0.7, 1.1), Complex(1.0, 0.3));
  ch.h[2][2] = Eigen::Vector2cd(Complex(0.2, -0.5), Complex(-1.2, 0.6));
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      if (j != m) ch.h[j][m] = Eigen::Vector2cd(1.0, 1.0);
    }
  }
  IaOptions opts;
  opts.max_iters = 400;
  opts.leakage_tol = 0.0;
  const IaSolution sol = distributed_ia(ch, opts);
  CHECK(sol.leakage <= 1e-6);
}

TEST_CASE("leakage descent: monotone history, unit norms, consistency") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const PairedChannelSet ch = random_set(seed);
    IaOptions opts;
    opts.max_iters = 60;
    opts.leakage_tol = 0.0;
    const IaSolution sol = distributed_ia(ch, opts);

    REQUIRE(static_cast<int>(sol.history.size()) == sol.iterations);
    for (size_t i = 1; i < sol.history.size(); ++i) {
      CHECK(sol.history[i] <= sol.history[i - 1] + 1e-9);
    }
    for (int m = 0; m < kNumCells; ++m) {
      CHECK(std::abs(sol.v[m].norm() - 1.0) < 1e-12);
      CHECK(std::abs(sol.u[m].norm() - 1.0) < 1e-12);
    }
    CHECK(sol.leakage ==
          doctest::Approx(sol.history.back()).epsilon(1e-12));
    CHECK(interference_leakage(ch, sol.v, sol.u) ==
          doctest::Approx(sol.leakage).epsilon(1e-10));
    for (int j = 0; j < kNumCells; ++j) {
      for (int m = 0; m < kNumCells; ++m) {
        const Eigen::Vector2cd hv(ch.h[j][m](0) * sol.v[j](0),
                                  ch.h[j][m](1) * sol.v[j](1));
        const Complex e = sol.u[m].dot(hv);
        CHECK(std::abs(e - sol.effective(j, m)) < 1e-10);
      }
    }
  }
}

TEST_CASE("best-utility selection recomputes consistently") {
  const PairedChannelSet ch = random_set(404);
  IaOptions opts;
  opts.max_iters = 80;
  opts.leakage_tol = 0.0;
  opts.select = IaSelect::kBestUtility;
  const IaSolution sol = distributed_ia(ch, opts);
  CHECK(interference_leakage(ch, sol.v, sol.u) ==
        doctest::Approx(sol.leakage).epsilon(1e-10));
  double best = sol.history.empty() ? sol.leakage : sol.history.front();
  for (const double l : sol.history) best = std::min(best, l);
  CHECK(sol.leakage + 1e-12 >= best);
}

TEST_CASE("leakage descent tracks the angle-grid oracle") {
  const PairedChannelSet ch = random_set(2026);
  IaOptions opts;
  opts.max_iters = 10000;
  opts.leakage_tol = 1e-14;
  const IaSolution sol = distributed_ia(ch, opts);
  const double oracle_min = oracle::angle_grid_min_leakage(ch, 10, 60);
  CHECK(sol.leakage <= oracle_min + 1e-3);
}

TEST_CASE("effective link gains from known filters") {
  PairedChannelSet ch = random_set(55);
  ch.sigma2 = 2.0;
  IaSolution sol;
  for (int m = 0; m < kNumCells; ++m) {
    sol.v[m] = Eigen::Vector2cd(1.0, 0.0);
    sol.u[m] = Eigen::Vector2cd(1.0, 0.0);
  }
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      sol.effective(j, m) = ch.h[j][m](0);
    }
  }
  const Eigen::Matrix3d g = effective_link_gains(ch, sol);
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      CHECK(g(j, m) ==
            doctest::Approx(std::norm(ch.h[j][m](0)) / 2.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("converged cross gains are bounded by the leakage") {
  const PairedChannelSet ch = random_set(66);
  IaOptions opts;
  opts.max_iters = 400;
  opts.leakage_tol = 1e-14;
  const IaSolution sol = distributed_ia(ch, opts);
  const Eigen::Matrix3d g = effective_link_gains(ch, sol);
  for (int j = 0; j < kNumCells; ++j) {
    for (int m = 0; m < kNumCells; ++m) {
      if (j == m) continue;
      CHECK(g(j, m) <= sol.leakage / ch.sigma2 + 1e-15);
    }
  }
}

TEST_CASE("operating points: valid norms, consistent fields") {
  const PairedChannelSet ch = random_set(321);
  IaOptions opts;
  opts.max_iters = 400;
  opts.leakage_tol = 1e-10;
  opts.snapshot_powers = {1e1, 1e3, 1e5};
  opts.max_sinr_iters = 60;
  const auto pts = ia_operating_points(ch, opts);
  REQUIRE(pts.size() >= opts.snapshot_powers.size());

  bool any_silent = false;
  for (const auto& pt : pts) {
    int zero_v = 0;
    for (int m = 0; m < kNumCells; ++m) {
      const double nv = pt.v[m].norm();
      CHECK(nv <= 1.0 + 1e-12);
      if (nv < 1e-9) ++zero_v;
      CHECK(std::abs(pt.u[m].norm() - 1.0) < 1e-9);
    }
    if (zero_v == 1) any_silent = true;
    CHECK(interference_leakage(ch, pt.v, pt.u) ==
          doctest::Approx(pt.leakage).epsilon(1e-9));
    for (int j = 0; j < kNumCells; ++j) {
      for (int m = 0; m < kNumCells; ++m) {
        Eigen::Vector2cd hv(ch.h[j][m](0) * pt.v[j](0),
                            ch.h[j][m](1) * pt.v[j](1));
        const Complex e = pt.u[m].dot(hv);
        CHECK(std::abs(e - pt.effective(j, m)) < 1e-10);
      }
    }
  }
  CHECK(any_silent);
}
