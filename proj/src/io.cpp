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

#include "visplan/io.hpp"

#include <fstream>

namespace visplan {

nlohmann::json instance_to_json(const Instance& instance) {
  nlohmann::json doc;
  doc["prices"] = instance.prices();
  doc["weights"] = instance.weights();
  doc["visibility"] = instance.visibility();
  doc["T"] = instance.horizon();
  doc["k"] = instance.cardinality_cap() ? nlohmann::json(*instance.cardinality_cap())
                                        : nlohmann::json(nullptr);
  return doc;
}

Instance instance_from_json(const nlohmann::json& doc) {
  try {
    std::optional<int> cap;
    if (doc.contains("k") && !doc["k"].is_null()) {
      cap = doc["k"].get<int>();
    }
    return Instance(doc.at("prices").get<std::vector<double>>(),
                    doc.at("weights").get<std::vector<double>>(),
                    doc.at("visibility").get<std::vector<int>>(),
                    doc.at("T").get<int>(), cap);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::io, std::string("bad instance document: ") + e.what());
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::io, "cannot open " + path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::io, path + ": " + e.what());
  }
  return instance_from_json(doc);
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Errc::io, "cannot write " + path);
  }
  out << instance_to_json(instance).dump(2) << '\n';
}

}  // namespace visplan
