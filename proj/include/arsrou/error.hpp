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

#ifndef ARSROU_ERROR_HPP
#define ARSROU_ERROR_HPP

#include <stdexcept>
#include <string>

namespace arsrou {

enum class ErrorCode {
  domain,               // x outside the model support
  index,                // term index out of range
  sign,                 // auxiliary potential evaluated on the wrong half-line
  unbounded_region,     // RoU region has no finite cover for the given rho
  infinite_envelope,    // Scheme-1 proposal would carry infinite mass
  invariant_violation,  // a bound turned out not to dominate the target
  precondition,         // malformed input (intervals, supports, parameters)
  config,               // configuration parse/validation failure
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace arsrou

#endif  // ARSROU_ERROR_HPP
