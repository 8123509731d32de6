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

#include "irsopt/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace irsopt::kernels {

namespace {

const Ops& select() {
  const char* env = std::getenv("IRSOPT_KERNELS");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) {
    return scalar_ops();
  }
  const Ops* simd = avx2_ops();
  if (simd != nullptr) return *simd;
  return scalar_ops();
}

}  // namespace

const Ops& active() {
  static const Ops& ops = select();
  return ops;
}

}  // namespace irsopt::kernels
