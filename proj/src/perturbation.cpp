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

#include "efpe/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "efpe/error.hpp"
#include "efpe/format.hpp"

namespace efpe {

PerturbedBasis PerturbedBasis::make(int n, double epsilon) {
  if (n < 1) throw Error(ErrorCode::kInvalidGame, "basis needs at least one action");
  if (!(epsilon >= 0.0) || epsilon * n >= 1.0) {
    throw Error(ErrorCode::kEpsilonTooLarge, "epsilon " + format_real(epsilon) + " outside [0, 1/" +
                                                 std::to_string(n) + ")");
  }
  PerturbedBasis b(n);
  b.epsilon_ = epsilon;
  b.tau_ = 1.0 - n * epsilon;
  return b;
}

void PerturbedBasis::to_perturbed(std::span<const double> xhat, std::span<double> x) const {
  const double shift = epsilon_ * std::accumulate(xhat.begin(), xhat.end(), 0.0);
  for (std::size_t j = 0; j < xhat.size(); ++j) x[j] = shift + tau_ * xhat[j];
}

std::vector<double> PerturbedBasis::to_perturbed(std::span<const double> xhat) const {
  std::vector<double> x(xhat.size());
  to_perturbed(xhat, x);
  return x;
}

// B is symmetric, so B^T v has the same closed form as B x.
void PerturbedBasis::pull_back(std::span<const double> v, std::span<double> vhat) const { to_perturbed(v, vhat); }

std::vector<double> PerturbedBasis::pull_back(std::span<const double> v) const { return to_perturbed(v); }

double effective_epsilon(double epsilon, int n) { return std::min(epsilon, 0.5 / n); }

namespace {

SequenceLowerBounds lower_bounds_impl(const SequenceIndex& idx, auto&& epsilon_of) {
  SequenceLowerBounds out;
  for (int p = 1; p <= 2; ++p) {
    const PlayerSequences& seqs = idx.player(p);
    std::vector<double>& l = out.bounds[static_cast<std::size_t>(p - 1)];
    l.assign(seqs.num_sequences, 0.0);
    l[kEmptySequence] = 1.0;
    for (InfosetId iid : seqs.infosets) {
      const InfosetEntry& info = idx.infoset(iid);
      const double bound = l[static_cast<std::size_t>(info.parent_sequence)] * epsilon_of(info);
      for (int a = 0; a < info.num_actions; ++a) l[static_cast<std::size_t>(info.sequence(a))] = bound;
    }
  }
  return out;
}

}  // namespace

SequenceLowerBounds sequence_lower_bounds(const SequenceIndex& idx, double epsilon) {
  return lower_bounds_impl(idx, [epsilon](const InfosetEntry&) { return epsilon; });
}

SequenceLowerBounds sequence_lower_bounds(const SequenceIndex& idx, std::span<const double> infoset_epsilon) {
  return lower_bounds_impl(
      idx, [infoset_epsilon](const InfosetEntry& info) { return infoset_epsilon[static_cast<std::size_t>(info.id)]; });
}

}  // namespace efpe
