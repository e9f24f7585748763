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

#include "subzero/steps.h"

#include <cmath>

#include <fmt/format.h>

#include "subzero/error.h"

namespace subzero {

StepSchedule StepSchedule::Constant(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ParameterError(fmt::format("constant step {} must be positive", alpha));
  }
  return StepSchedule(Kind::kConstant, alpha, 0.0);
}

StepSchedule StepSchedule::ConstantForHorizon(int horizon) {
  if (horizon <= 0) throw ParameterError("horizon must be positive");
  return Constant(1.0 / std::sqrt(static_cast<double>(horizon)));
}

StepSchedule StepSchedule::Power(double kappa) {
  if (!std::isfinite(kappa) || kappa < 0.5) {
    throw ParameterError(fmt::format(
        "kappa = {} violates the diminishing-step assumption: with kappa < "
        "1/2 the steps decay too slowly and the sum of alpha(t)^2 diverges "
        "(sum alpha^2 = inf)",
        kappa));
  }
  if (kappa > 1.0) {
    throw ParameterError(fmt::format(
        "kappa = {} violates the diminishing-step assumption: with kappa > 1 "
        "the sum of alpha(t) converges (sum alpha < inf)",
        kappa));
  }
  return StepSchedule(Kind::kPower, 0.0, kappa);
}

double StepSchedule::operator()(int t) const {
  if (kind_ == Kind::kConstant) return alpha_;
  return std::pow(static_cast<double>(t) + 1.0, -kappa_);
}

std::string StepSchedule::Describe() const {
  if (kind_ == Kind::kConstant) return fmt::format("constant alpha={}", alpha_);
  return fmt::format("power alpha(t)=(t+1)^-{}", kappa_);
}

}  // namespace subzero
