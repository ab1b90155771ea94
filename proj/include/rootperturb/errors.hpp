/*
   Copyright 2026 The rootperturb authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace rootperturb {

// Base of every library error. The three direct subclasses partition the
// failure modes the CLI maps to distinct exit codes: ParseError (bad input
// document), PreconditionError (valid input, contract violated) and
// NumericalError (iteration did not reach the requested accuracy).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

struct CapMismatch : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct CapacityExceeded : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct DegreeMismatch : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NotInvertible : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NotNonconstant : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct BadIndex : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct CardinalityMismatch : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct DegenerateVariant : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct TooLarge : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct ZeroOperator : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct DegreeNotPreserved : PreconditionError {
    using PreconditionError::PreconditionError;
};

// Raised by the containment checks; `reason` tells which hypothesis failed.
struct PreconditionFailed : PreconditionError {
    enum class Reason { not_apolar, roots_not_in_domain, not_invertible };

    PreconditionFailed(Reason r, const std::string& msg)
        : PreconditionError(msg), reason(r) {}

    Reason reason;
};

// Carries the best simultaneous iterate so the caller may retry or inspect.
struct NoConvergence : NumericalError {
    NoConvergence(const std::string& msg, std::vector<std::complex<double>> iterate)
        : NumericalError(msg), best(std::move(iterate)) {}

    std::vector<std::complex<double>> best;
};

}  // namespace rootperturb
