// Copyright 2026 The causaldistill Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cdist/bell.hpp"

#include <json.hpp>

namespace cdist {

std::string to_string(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return "X";
    case PauliAxis::Y: return "Y";
    case PauliAxis::Z: return "Z";
  }
  return "?";
}

PauliAxis parse_axis(const std::string& s) {
  if (s == "X" || s == "x") return PauliAxis::X;
  if (s == "Y" || s == "y") return PauliAxis::Y;
  if (s == "Z" || s == "z") return PauliAxis::Z;
  throw DomainError("unknown Pauli axis '" + s + "' (expected X, Y or Z)");
}

std::string to_json(const BellVector& x) {
  nlohmann::json j = nlohmann::json::array({x(0), x(1), x(2), x(3)});
  return j.dump();
}

BellVector bell_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("bell_from_json: ") + e.what());
  }
  if (!j.is_array() || j.size() != 4) {
    throw DomainError("bell_from_json: expected an array of four numbers");
  }
  BellVector x;
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_number()) throw DomainError("bell_from_json: non-numeric weight");
    x(i) = j[i].get<double>();
  }
  if ((x.array() < 0).any()) throw DomainError("bell_from_json: negative weight");
  return x;
}

}  // namespace cdist
