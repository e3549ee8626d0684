// Copyright (c) 2026 torus-greens developers
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

// JSON serialization: lattices as {"a":..,"bx":..,"b":..[,"cx","cy","c"]},
// integer matrices as row-major arrays.

#ifndef TORUS_GREENS_JSON_IO_HPP
#define TORUS_GREENS_JSON_IO_HPP

#include "json.hpp"
#include "torus_greens/lattice.hpp"

namespace tg {

inline void to_json(nlohmann::json& j, const Lattice2& L) {
  j = {{"a", L.a}, {"bx", L.bx}, {"b", L.b}};
}

inline void from_json(const nlohmann::json& j, Lattice2& L) {
  L = Lattice2(j.at("a").get<double>(), j.at("bx").get<double>(),
               j.at("b").get<double>());
}

inline void to_json(nlohmann::json& j, const Lattice3& L) {
  j = {{"a", L.a},  {"bx", L.bx}, {"b", L.b},
       {"cx", L.cx}, {"cy", L.cy}, {"c", L.c}};
}

inline void from_json(const nlohmann::json& j, Lattice3& L) {
  L = Lattice3(j.at("a").get<double>(), j.at("bx").get<double>(),
               j.at("b").get<double>(), j.at("cx").get<double>(),
               j.at("cy").get<double>(), j.at("c").get<double>());
}

inline void to_json(nlohmann::json& j, const IMat3& w) {
  j = nlohmann::json::array();
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) j.push_back(w(i, k));
}

inline void from_json(const nlohmann::json& j, IMat3& w) {
  if (!j.is_array() || j.size() != 9)
    throw Error(ErrorKind::DomainError, "expected 9 row-major integers");
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      w(i, k) = j[static_cast<std::size_t>(3 * i + k)].get<std::int64_t>();
}

inline void to_json(nlohmann::json& j, const IMat2& w) {
  j = nlohmann::json::array();
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) j.push_back(w(i, k));
}

inline void from_json(const nlohmann::json& j, IMat2& w) {
  if (!j.is_array() || j.size() != 4)
    throw Error(ErrorKind::DomainError, "expected 4 row-major integers");
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      w(i, k) = j[static_cast<std::size_t>(2 * i + k)].get<std::int64_t>();
}

}  // namespace tg

#endif
