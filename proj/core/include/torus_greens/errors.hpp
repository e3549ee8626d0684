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

#ifndef TORUS_GREENS_ERRORS_HPP
#define TORUS_GREENS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tg {

/// Error taxonomy shared by all evaluators. The CLI maps these onto exit
/// code 3 with the kind name as the diagnostic tag.
enum class ErrorKind {
  SingularPoint,
  PoleAtS,
  NotConverged,
  PoleAtNonPositiveInteger,
  DomainError,
  OnJumpLocus,
  AxisSingularity,
  GridTooCoarse,
  DegenerateLattice,
  QuadratureTailTooLarge,
  UsageError,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::PoleAtS: return "PoleAtS";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::PoleAtNonPositiveInteger: return "PoleAtNonPositiveInteger";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::OnJumpLocus: return "OnJumpLocus";
    case ErrorKind::AxisSingularity: return "AxisSingularity";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::DegenerateLattice: return "DegenerateLattice";
    case ErrorKind::QuadratureTailTooLarge: return "QuadratureTailTooLarge";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tg

#endif
