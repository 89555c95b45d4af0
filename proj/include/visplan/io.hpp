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

#ifndef VISPLAN_IO_HPP
#define VISPLAN_IO_HPP

#include <string>

#include <json.hpp>

#include "visplan/instance.hpp"

namespace visplan {

// Instance file schema:
//   {"prices": [..], "weights": [..], "visibility": [..], "T": int,
//    "k": int or null}
// The product order in the file is the canonical external order.

nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& doc);

/// Throws Error(Errc::io) on missing files or bad JSON.
Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

}  // namespace visplan

#endif  // VISPLAN_IO_HPP
