// Copyright 2026 The irsopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "irsopt/objective.hpp"
#include "irsopt/power.hpp"

using namespace irsopt;
using namespace irsopt::testing;

namespace {

PowerSubproblem random_subproblem(int k_users, Rng& rng) {
  PowerSubproblem sub;
  const std::size_t n = static_cast<std::size_t>(k_users);
  sub.signal.resize(n);
  sub.interference.assign(n * n, 0.0);
  sub.weights.resize(n);
  sub.sigma2 = rng.uniform(0.05, 1.0);
  sub.budget = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    sub.signal[k] = std::norm(cplx(rng.next_normal(), rng.next_normal()));
    sub.weights[k] = rng.uniform(0.5, 2.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != k) {
        sub.interference[k * n + i] =
            0.3 * std::norm(cplx(rng.next_normal(), rng.next_normal()));
      }
    }
  }
  return sub;
}

std::vector<double> uniform_start(const PowerSubproblem& sub) {
  return std::vector<double>(sub.users(), sub.budget / sub.users());
}

bool feasible(const PowerSubproblem& sub, const std::vector<double>& p) {
  double sum = 0.0;
  for (double x : p) {
    if (x < sub.floor()) return false;
    sum += x;
  }
  return sum <= sub.budget * (1.0 + 1e-12);
}

}  // namespace

TEST_CASE("extract_subproblem reproduces the sum rate over powers") {
  Rng rng(41);
  const ChannelSet ch = synthetic_channels(2, 2, 2, 2, 4, rng);
  SystemConfig cfg = config_for(ch);
  cfg.user_weights = {1.3, 0.6};
  const PhaseVector theta(random_unit_phases(8, rng));
  const BeamMatrix w(random_unit_rows(2, 4, rng));
  const PowerSubproblem sub = extract_subproblem(theta, w, ch, cfg);

  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<double> p = random_powers(2, cfg.total_power_w, rng);
    const double via_sub = sub.objective(p);
    const double via_rate = weighted_sum_rate(
        theta, w, PowerVector(p, cfg.total_power_w), ch, cfg);
    CHECK(via_sub == doctest::Approx(via_rate).epsilon(1e-12));
  }
}

TEST_CASE("extract_subproblem: K=1 has no interference terms") {
  Rng rng(42);
  const ChannelSet ch = synthetic_channels(1, 1, 2, 2, 4, rng);
  const SystemConfig cfg = config_for(ch);
  const PhaseVector theta(random_unit_phases(4, rng));
  const BeamMatrix w(random_unit_rows(1, 4, rng));
  const PowerSubproblem sub = extract_subproblem(theta, w, ch, cfg);
  CHECK(sub.users() == 1);
  CHECK(sub.signal[0] > 0.0);
  CHECK(sub.interference[0] == 0.0);
}

TEST_CASE("extract_subproblem: orthogonalized beams kill the b terms") {
  Rng rng(43);
  const ChannelSet ch = synthetic_channels(2, 2, 2, 2, 4, rng);
  const SystemConfig cfg = config_for(ch);
  const CVec theta = random_unit_phases(8, rng);
  const EffectiveChannels eff =
      effective_channels(ch, PhaseVector(theta));

  // w_1 orthogonal to v_2 and w_2 orthogonal to v_1: rows from the
  // complementary projections.
  const CVec v1(std::vector<cplx>(eff.rows.row(0), eff.rows.row(0) + 4));
  const CVec v2(std::vector<cplx>(eff.rows.row(1), eff.rows.row(1) + 4));
  // v_k stored as v_k^H; orthogonality of the rows is what matters.
  CVec r1 = v1, r2 = v2;
  la::axpy(-la::dotc(v2, v1) / la::norm2sq(v2), v2, r1);
  la::axpy(-la::dotc(v1, v2) / la::norm2sq(v1), v1, r2);
  CMat w(2, 4);
  for (std::size_t c = 0; c < 4; ++c) {
    w(0, c) = r1[c] / la::norm(r1);
    w(1, c) = r2[c] / la::norm(r2);
  }
  const PowerSubproblem sub =
      extract_subproblem(PhaseVector(theta), BeamMatrix(w), ch, cfg);
  CHECK(sub.b(0, 1) < 1e-24);
  CHECK(sub.b(1, 0) < 1e-24);
}

TEST_CASE("single-user power lands exactly on the budget") {
  Rng rng(44);
  PowerSubproblem sub = random_subproblem(1, rng);
  sub.budget = 2.5;
  const PowerResult gp = allocate_power_gp(sub, {0.3}, 1e-10);
  CHECK(gp.p[0] == 2.5);
  const PowerResult pg = allocate_power_pg(sub, {0.3}, 1e-12);
  CHECK(pg.p[0] == 2.5);
  const auto oracle = power_oracle(sub, 100);
  CHECK(oracle[0] == 2.5);
}

TEST_CASE("symmetric subproblem keeps the even split") {
  PowerSubproblem sub;
  sub.signal = {2.0, 2.0};
  sub.interference = {0.0, 0.5, 0.5, 0.0};
  sub.weights = {1.0, 1.0};
  sub.sigma2 = 1.0;
  sub.budget = 1.0;
  const PowerResult gp = allocate_power_gp(sub, uniform_start(sub), 1e-12);
  CHECK(gp.p[0] == doctest::Approx(gp.p[1]).epsilon(1e-9));
  CHECK(gp.p[0] + gp.p[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gp reaches the grid-oracle optimum on random K=2 subproblems") {
  Rng rng(45);
  for (int trial = 0; trial < 25; ++trial) {
    const PowerSubproblem sub = random_subproblem(2, rng);
    const PowerResult gp = allocate_power_gp(sub, uniform_start(sub), 1e-10);
    const double oracle_val = sub.objective(power_oracle(sub, 200));
    CHECK(gp.objective >= oracle_val - 1e-3);
    CHECK(feasible(sub, gp.p));
  }
}

TEST_CASE("gp reaches the grid-oracle optimum on random K=3 subproblems") {
  Rng rng(46);
  for (int trial = 0; trial < 5; ++trial) {
    const PowerSubproblem sub = random_subproblem(3, rng);
    const PowerResult gp = allocate_power_gp(sub, uniform_start(sub), 1e-10);
    const double oracle_val = sub.objective(power_oracle(sub, 150));
    CHECK(gp.objective >= oracle_val - 1e-3);
    CHECK(feasible(sub, gp.p));
  }
}

TEST_CASE("gp rejects non-positive starting points") {
  Rng rng(47);
  const PowerSubproblem sub = random_subproblem(2, rng);
  CHECK_THROWS_AS(allocate_power_gp(sub, {0.0, 0.5}, 1e-9),
                  std::invalid_argument);
  CHECK_THROWS_AS(allocate_power_gp(sub, {-0.1, 0.5}, 1e-9),
                  std::invalid_argument);
}

TEST_CASE("condensation rounds never lower the true objective") {
  Rng rng(48);
  for (int trial = 0; trial < 10; ++trial) {
    const PowerSubproblem sub = random_subproblem(3, rng);
    const PowerResult gp = allocate_power_gp(sub, uniform_start(sub), 1e-12);
    for (std::size_t i = 1; i < gp.round_objectives.size(); ++i) {
      CHECK(gp.round_objectives[i] >= gp.round_objectives[i - 1]);
    }
  }
}

TEST_CASE("projected gradient: zero interference binds the budget") {
  Rng rng(49);
  PowerSubproblem sub = random_subproblem(2, rng);
  for (std::size_t i = 0; i < 4; ++i) sub.interference[i] = 0.0;
  const PowerResult pg = allocate_power_pg(sub, uniform_start(sub), 1e-13);
  double total = 0.0;
  for (double x : pg.p) {
    CHECK(x > 0.0);
    total += x;
  }
  CHECK(total == doctest::Approx(sub.budget).epsilon(1e-9));
  const double oracle_val = sub.objective(power_oracle(sub, 400));
  CHECK(pg.objective >= oracle_val - 1e-3);
  CHECK(pg.kkt_residual < 1e-5);
}

TEST_CASE("projected gradient is monotone from any start") {
  Rng rng(50);
  for (int trial = 0; trial < 10; ++trial) {
    const PowerSubproblem sub = random_subproblem(3, rng);
    std::vector<double> p0(3);
    for (double& x : p0) x = rng.uniform(0.01, 0.33);
    const double f0 = sub.objective(p0);
    const PowerResult pg = allocate_power_pg(sub, p0, 1e-10);
    CHECK(pg.objective >= f0);
    for (std::size_t i = 1; i < pg.round_objectives.size(); ++i) {
      CHECK(pg.round_objectives[i] >= pg.round_objectives[i - 1]);
    }
  }
}

TEST_CASE("power oracle corner cases") {
  Rng rng(51);
  SUBCASE("K=1 returns the budget") {
    const PowerSubproblem sub = random_subproblem(1, rng);
    for (int r : {1, 10, 137}) {
      CHECK(power_oracle(sub, r)[0] == sub.budget);
    }
  }
  SUBCASE("symmetric ties break lexicographically") {
    PowerSubproblem sub;
    sub.signal = {1.0, 1.0};
    sub.interference = {0.0, 25.0, 25.0, 0.0};  // strong mutual interference
    sub.weights = {1.0, 1.0};
    sub.sigma2 = 0.01;
    sub.budget = 1.0;
    const auto p = power_oracle(sub, 50);
    // One-user corners win; the lexicographically first grid point is
    // p = (0, P).
    CHECK(p[0] == 0.0);
    CHECK(p[1] == 1.0);
  }
  SUBCASE("K larger than 3 is rejected") {
    PowerSubproblem sub;
    sub.signal = {1, 1, 1, 1};
    sub.interference.assign(16, 0.0);
    sub.weights = {1, 1, 1, 1};
    sub.sigma2 = 1.0;
    sub.budget = 1.0;
    CHECK_THROWS_AS(power_oracle(sub, 10), std::invalid_argument);
  }
}

TEST_CASE("allocation is invariant to common scaling of gains and noise") {
  Rng rng(52);
  for (double factor : {1e-6, 1e3}) {
    const PowerSubproblem sub = random_subproblem(2, rng);
    PowerSubproblem scaled = sub;
    scaled.sigma2 *= factor;
    for (double& a : scaled.signal) a *= factor;
    for (double& b : scaled.interference) b *= factor;

    const PowerResult base = allocate_power_gp(sub, uniform_start(sub), 1e-12);
    const PowerResult other =
        allocate_power_gp(scaled, uniform_start(scaled), 1e-12);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(other.p[k] == doctest::Approx(base.p[k]).epsilon(1e-9));
    }
    // The grid oracle agrees on the argmax too.
    const auto oracle_base = power_oracle(sub, 100);
    const auto oracle_scaled = power_oracle(scaled, 100);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(oracle_base[k] == oracle_scaled[k]);
    }
  }
}

TEST_CASE("project_power outputs satisfy the constraint set") {
  Rng rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 5;
    std::vector<double> x(n);
    for (double& v : x) v = rng.uniform(-1.0, 3.0);
    const double budget = rng.uniform(0.5, 2.0);
    const double floor = 1e-12 * budget;
    const auto p = project_power(x, budget, floor);
    double sum = 0.0;
    for (double v : p) {
      CHECK(v >= floor);
      sum += v;
    }
    CHECK(sum <= budget * (1.0 + 1e-12));
  }
}
