// Copyright 2026 The cvsteer Authors
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

namespace cvsteer {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A parameter or input failed validation. `field()` names the culprit.
class ValidationError : public Error {
  public:
    ValidationError(std::string field, const std::string &what)
        : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

    [[nodiscard]] const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// The drift matrix has an eigenvalue with nonnegative real part, so no
/// steady state exists.
class StabilityError : public Error {
  public:
    StabilityError(const std::string &what, double max_real_eigenvalue)
        : Error(what), max_real_eigenvalue_(max_real_eigenvalue) {}

    [[nodiscard]] double max_real_eigenvalue() const noexcept { return max_real_eigenvalue_; }

  private:
    double max_real_eigenvalue_;
};

/// Ill-conditioned or singular computation (marginal stability, negative
/// discriminants beyond tolerance, non-PSD diffusion).
class NumericalError : public Error {
  public:
    using Error::Error;
};

/// The operation is not defined for the given inputs (e.g. a closed form
/// requested outside the parameter family it was derived for).
class UnsupportedError : public Error {
  public:
    using Error::Error;
};

} // namespace cvsteer
