/* Copyright 2026 The acrotag Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "acrotag/loss.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "acrotag/error.hpp"

namespace acrotag::training {

std::vector<double> TokenLosses(const Eigen::MatrixXd& probs,
                                const tagging::LabelSequence& labels) {
  if (static_cast<size_t>(probs.cols()) != labels.size()) {
    Fail(ErrorCode::kInvalidArgument, "probability and label counts differ");
  }
  std::vector<double> losses(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    const double p = probs(labels[i], static_cast<Eigen::Index>(i));
    losses[i] = -std::log(std::max(p, kProbabilityFloor));
  }
  return losses;
}

size_t ArgMax(std::span<const double> losses) {
  return static_cast<size_t>(
      std::max_element(losses.begin(), losses.end()) - losses.begin());
}

double AugmentedLoss(std::span<const double> losses,
                     std::span<const size_t> masked, const LossWeights& weights) {
  if (losses.empty()) return 0.0;
  const double mean = std::accumulate(losses.begin(), losses.end(), 0.0) /
                      static_cast<double>(losses.size());
  const double max = losses[ArgMax(losses)];
  double mask_loss = 0.0;
  for (size_t i : masked) {
    if (i >= losses.size()) {
      Fail(ErrorCode::kInvalidArgument, "masked position out of range");
    }
    mask_loss += losses[i];
  }
  return mean + weights.lambda_max * max + weights.lambda_mask * mask_loss;
}

}  // namespace acrotag::training
