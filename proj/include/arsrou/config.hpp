// Copyright 2026 The arsrou Authors
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

#ifndef ARSROU_CONFIG_HPP
#define ARSROU_CONFIG_HPP

#include <string>

#include "arsrou/model.hpp"

namespace arsrou {

/// Parses a JSON model description; see docs/model-config.md.
PotentialModel parse_model_config(const std::string& json_text);

}  // namespace arsrou

#endif  // ARSROU_CONFIG_HPP
