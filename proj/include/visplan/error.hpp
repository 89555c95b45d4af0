// Copyright 2026 The Visplan Authors
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

#ifndef VISPLAN_ERROR_HPP
#define VISPLAN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace visplan {

/// Machine-readable failure categories. The CLI maps these to exit codes;
/// library callers can branch on them without parsing messages.
enum class Errc {
  invalid_instance,    // malformed instance data
  invalid_assortment,  // product index out of range / not applicable
  precondition,        // caller violated an operation precondition
  too_large,           // instance exceeds a brute-force / enumeration guard
  infeasible,          // no feasible solution exists
  budget_exceeded,     // configured enumeration budget exceeded
  unsupported,         // instance shape not handled (e.g. unequal prices)
  extraction,          // LP solution does not have the promised structure
  structure,           // malformed graph / model structure
  cannot_increase,     // visibility requirement already at the horizon
  numeric,             // internal numerical certification failed
  io,                  // file / JSON errors
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace visplan

#endif  // VISPLAN_ERROR_HPP
