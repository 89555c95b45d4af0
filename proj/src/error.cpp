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

#include "visplan/error.hpp"

namespace visplan {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_instance: return "invalid_instance";
    case Errc::invalid_assortment: return "invalid_assortment";
    case Errc::precondition: return "precondition";
    case Errc::too_large: return "too_large";
    case Errc::infeasible: return "infeasible";
    case Errc::budget_exceeded: return "budget_exceeded";
    case Errc::unsupported: return "unsupported";
    case Errc::extraction: return "extraction";
    case Errc::structure: return "structure";
    case Errc::cannot_increase: return "cannot_increase";
    case Errc::numeric: return "numeric";
    case Errc::io: return "io";
  }
  return "unknown";
}

}  // namespace visplan
