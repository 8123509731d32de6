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

#ifndef IRSOPT_DRIVER_HPP_
#define IRSOPT_DRIVER_HPP_

#include <string>
#include <vector>

#include "irsopt/channel.hpp"
#include "irsopt/model.hpp"
#include "irsopt/power.hpp"
#include "irsopt/rng.hpp"

namespace irsopt {

enum class Termination { kConverged, kIterationCap, kStagnated };
const char* to_string(Termination t);

struct OuterRecord {
  int iter = 0;
  double objective = 0.0;   // after the full outer iteration
  double delta_theta = 0.0; // per-stage objective gains
  double delta_w = 0.0;
  double delta_power = 0.0;
};

struct Solution {
  PhaseVector theta;
  BeamMatrix w;
  PowerVector p;
  double objective = 0.0;  // weighted sum rate of the stored blocks
  std::vector<OuterRecord> outer_trace;
  Termination termination = Termination::kIterationCap;

  int outer_iterations() const {
    return static_cast<int>(outer_trace.size()) - 1;
  }
};

struct InitPoint {
  PhaseVector theta;
  BeamMatrix w;
  PowerVector p;
};

// Uniform random phases, matched-filter beamformer rows (row k is the
// normalized v_k^H at the drawn phases), and an even power split.
InitPoint init_point(const SystemConfig& cfg, const ChannelSet& ch, Rng& rng);

// The alternating loop: conjugate-gradient ascent over theta, then over W,
// then the GP power update, repeated until the outer objective moves less
// than tol_outer. Every stage starts from the previous stage's output and
// never decreases the objective.
Solution solve(const SystemConfig& cfg, const ChannelSet& ch,
               const InitPoint& init);

// Draws n_draws random-phase candidates, each completed with matched-filter
// rows and an even power split, and keeps the best. The benchmark scheme.
Solution random_baseline(const SystemConfig& cfg, const ChannelSet& ch,
                         int n_draws, Rng& rng);

}  // namespace irsopt

#endif  // IRSOPT_DRIVER_HPP_
