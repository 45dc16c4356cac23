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

#ifndef ACROTAG_LOSS_HPP_
#define ACROTAG_LOSS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "acrotag/tagging.hpp"

namespace acrotag::training {

inline constexpr double kProbabilityFloor = 1e-12;

struct LossWeights {
  double lambda_max = 2.0;
  double lambda_mask = 1.0;
};

// Per-token negative log-likelihood of the gold label; `probs` is
// n_labels x n_tokens. Probabilities are floored before the log.
std::vector<double> TokenLosses(const Eigen::MatrixXd& probs,
                                const tagging::LabelSequence& labels);

// mean(L) + lambda_max * max(L) + lambda_mask * sum of L over masked
// positions. Zero for an empty vector.
double AugmentedLoss(std::span<const double> losses,
                     std::span<const size_t> masked, const LossWeights& weights);

// Index of the first maximal entry; losses must be non-empty.
size_t ArgMax(std::span<const double> losses);

}  // namespace acrotag::training

#endif  // ACROTAG_LOSS_HPP_
