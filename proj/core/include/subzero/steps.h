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

#ifndef SUBZERO_STEPS_H_
#define SUBZERO_STEPS_H_

#include <string>

namespace subzero {

// Step-size rule t -> alpha(t), t = 0, 1, 2, ...
class StepSchedule {
 public:
  enum class Kind { kConstant, kPower };

  static StepSchedule Constant(double alpha);
  // alpha = 1 / sqrt(horizon).
  static StepSchedule ConstantForHorizon(int horizon);
  // alpha(t) = (t + 1)^(-kappa). Accepts kappa in [1/2, 1]; kappa = 1/2 is
  // not square-summable, which square_summable() reports.
  static StepSchedule Power(double kappa);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double kappa() const { return kappa_; }
  bool square_summable() const {
    return kind_ == Kind::kPower && kappa_ > 0.5;
  }

  double operator()(int t) const;
  std::string Describe() const;

 private:
  StepSchedule(Kind kind, double alpha, double kappa)
      : kind_(kind), alpha_(alpha), kappa_(kappa) {}

  Kind kind_;
  double alpha_;
  double kappa_;
};

}  // namespace subzero

#endif  // SUBZERO_STEPS_H_
