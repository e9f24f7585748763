// Copyright 2026 The Subzero Authors
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

#ifndef SUBZERO_ERROR_H_
#define SUBZERO_ERROR_H_

#include <stdexcept>
#include <string>

namespace subzero {

// Base of every exception thrown by the library. Each subclass corresponds to
// one documented failure mode; the CLI maps them onto stable exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point outside its action domain, or malformed data passed to a builder.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// A numeric parameter out of range (non-positive step, t < s, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Entropy geometry asked to work at a point with a zero component.
class SingularReferenceError : public Error {
 public:
  using Error::Error;
};

// A graph or schedule that fails the connectivity requirements.
class ConnectivityError : public Error {
 public:
  using Error::Error;
};

// Randomized search gave up; `closest` is the best value reached.
class NotFoundError : public Error {
 public:
  NotFoundError(const std::string& what, double closest)
      : Error(what), closest_(closest) {}
  double closest() const { return closest_; }

 private:
  double closest_;
};

// The requested operation is not available for this game/geometry class.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// Centralized NE solver failed to certify the requested gap.
class CertificateError : public Error {
 public:
  CertificateError(const std::string& what, double best_gap)
      : Error(what), best_gap_(best_gap) {}
  double best_gap() const { return best_gap_; }

 private:
  double best_gap_;
};

// Inner minimizer could not drive its stationarity residual below tolerance.
class OracleError : public Error {
 public:
  OracleError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Configuration text that does not parse or validate.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A file that cannot be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant, e.g. an iterate leaving its domain mid-run.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace subzero

#endif  // SUBZERO_ERROR_H_
