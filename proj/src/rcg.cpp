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

#include "irsopt/rcg.hpp"

#include <iomanip>
#include <ostream>

namespace irsopt {

const char* to_string(RcgStop stop) {
  switch (stop) {
    case RcgStop::kConverged: return "converged";
    case RcgStop::kGradNorm: return "grad_norm";
    case RcgStop::kZeroGradient: return "zero_gradient";
    case RcgStop::kIterationCap: return "iteration_cap";
    case RcgStop::kStagnated: return "stagnated";
  }
  return "unknown";
}

void RcgTrace::write_table(std::ostream& os) const {
  os << "iter objective grad_norm step lambda backtracks\n";
  os << std::setprecision(17);
  for (const RcgIterRecord& r : records) {
    os << r.iter << ' ' << r.objective << ' ' << r.grad_norm << ' ' << r.step
       << ' ' << r.lambda << ' ' << r.backtracks << '\n';
  }
}

}  // namespace irsopt
