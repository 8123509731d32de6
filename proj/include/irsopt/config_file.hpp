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

#ifndef IRSOPT_CONFIG_FILE_HPP_
#define IRSOPT_CONFIG_FILE_HPP_

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>

#include "irsopt/experiment.hpp"
#include "irsopt/model.hpp"

namespace irsopt {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParsedConfig {
  SystemConfig system;
  std::optional<ExperimentSpec> experiment;
};

// Sectioned key/value text ([system], [geometry], [solver], [experiment]);
// '#' starts a comment. Unknown sections or keys are errors. See the README
// for the full key list. Throws ConfigError on any problem.
ParsedConfig parse_config(std::istream& is);
ParsedConfig load_config_file(const std::string& path);

}  // namespace irsopt

#endif  // IRSOPT_CONFIG_FILE_HPP_
