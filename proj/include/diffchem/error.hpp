// Copyright 2026 The diffchem Authors
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
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace diffchem {

/// Broad classification of library failures. The CLI reports the kind string
/// verbatim in its `{"error": {"kind", "message"}}` object.
enum class ErrorKind {
    Input,
    UnsupportedElement,
    ClosedShellViolation,
    Layout,
    Domain,
    LinearDependence,
    Convergence,
    SingularGeometry,
    Propagation,
    Contract,
    Resource,
    NonHermitian,
    UnsupportedGradient,
    InternalConsistency,
    Divergence,
    Usage,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Input: return "input";
    case ErrorKind::UnsupportedElement: return "unsupported_element";
    case ErrorKind::ClosedShellViolation: return "closed_shell_violation";
    case ErrorKind::Layout: return "layout";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::LinearDependence: return "linear_dependence";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::SingularGeometry: return "singular_geometry";
    case ErrorKind::Propagation: return "propagation";
    case ErrorKind::Contract: return "contract";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::NonHermitian: return "non_hermitian";
    case ErrorKind::UnsupportedGradient: return "unsupported_gradient";
    case ErrorKind::InternalConsistency: return "internal_consistency";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Usage: return "usage";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

/// Raised when the SCF loop runs out of iterations; carries the last deltas.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string &message, double delta_p, double delta_e)
        : Error(ErrorKind::Convergence, message), delta_p_(delta_p),
          delta_e_(delta_e) {}

    [[nodiscard]] double delta_p() const noexcept { return delta_p_; }
    [[nodiscard]] double delta_e() const noexcept { return delta_e_; }

  private:
    double delta_p_;
    double delta_e_;
};

/// Raised when a differentiated function evaluates to a non-finite value.
class PropagationError : public Error {
  public:
    PropagationError(const std::string &message, double value)
        : Error(ErrorKind::Propagation, message), value_(value) {}

    [[nodiscard]] double value() const noexcept { return value_; }

  private:
    double value_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

} // namespace diffchem
