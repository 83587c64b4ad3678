// Copyright 2026 The lzx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// config.hpp: INI-style experiment configuration with dotted keys

#pragma once

#include <stdexcept>
#include <string>

#include "lzx/harness.hpp"

namespace lzx {

/// Configuration problem; `key()` is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message);
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Parses a configuration file. Relative paths inside it resolve against the
/// file's directory.
ExperimentConfig load_config(const std::string& path);
/// Parses configuration text; `base_dir` resolves relative table paths.
ExperimentConfig parse_config(const std::string& text, const std::string& base_dir = ".");

/// Renders a config back to text that parse_config accepts.
std::string dump_config(const ExperimentConfig& config);

}  // namespace lzx
