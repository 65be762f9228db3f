// Copyright 2026 The EFPE Solver Authors.
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

#ifndef EFPE_PERTURBATION_HPP_
#define EFPE_PERTURBATION_HPP_

#include <array>
#include <span>
#include <vector>

#include "efpe/sequence_form.hpp"

namespace efpe {

// Basis of the epsilon-perturbed simplex over n actions. Column j is the
// vertex (eps, ..., tau + eps, ..., eps) with tau = 1 - n*eps, so the matrix
// is eps*11^T + tau*I. It is symmetric and never materialized.
class PerturbedBasis {
 public:
  // Identity basis over n actions.
  explicit PerturbedBasis(int n = 1) : n_(n) {}

  // Throws Error(kEpsilonTooLarge) unless 0 <= epsilon < 1/n.
  static PerturbedBasis make(int n, double epsilon);

  int size() const { return n_; }
  double epsilon() const { return epsilon_; }
  double tau() const { return tau_; }
  double entry(int row, int col) const { return epsilon_ + (row == col ? tau_ : 0.0); }

  // x = B xhat. x and xhat may alias.
  void to_perturbed(std::span<const double> xhat, std::span<double> x) const;
  std::vector<double> to_perturbed(std::span<const double> xhat) const;

  // vhat = B^T v. v and vhat may alias.
  void pull_back(std::span<const double> v, std::span<double> vhat) const;
  std::vector<double> pull_back(std::span<const double> v) const;

 private:
  int n_ = 1;
  double epsilon_ = 0.0;
  double tau_ = 1.0;
};

inline PerturbedBasis make_basis(int n, double epsilon) { return PerturbedBasis::make(n, epsilon); }

// Perturbation actually applied at an infoset with n actions when the
// requested level is epsilon: large infosets are capped at 1/(2n) so the
// perturbed simplex stays nonempty.
double effective_epsilon(double epsilon, int n);

// l[Ia] = eps^depth(Ia) per player, l[EMPTY] = 1.
struct SequenceLowerBounds {
  std::array<std::vector<double>, 2> bounds;

  const std::vector<double>& player(int p) const { return bounds[static_cast<std::size_t>(p - 1)]; }
};

SequenceLowerBounds sequence_lower_bounds(const SequenceIndex& idx, double epsilon);
// Same with one epsilon per infoset (indexed by InfosetId); the bound is the
// product of the epsilons along the owner's chain.
SequenceLowerBounds sequence_lower_bounds(const SequenceIndex& idx, std::span<const double> infoset_epsilon);

}  // namespace efpe

#endif  // EFPE_PERTURBATION_HPP_
