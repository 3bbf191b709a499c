#pragma once

#include <cmath>
#include <utility>

#include "subhardy/types.hpp"

namespace subhardy {

/// Norming sequence beta_0, ..., beta_{D-1} of a diagonal space: the n-th
/// monomial has norm beta_n.  Entries must be finite and strictly positive.
class WeightSequence {
 public:
  explicit WeightSequence(VectorXd beta) : beta_(std::move(beta)) {
    if (beta_.size() == 0) throw InvalidSpace("empty norming sequence");
    for (Index n = 0; n < beta_.size(); ++n)
      if (!std::isfinite(beta_[n]) || beta_[n] <= 0.0)
        throw InvalidSpace("norming sequence entries must be finite and positive");
  }

  static WeightSequence ones(Index dim) {
    return WeightSequence(VectorXd::Ones(dim));
  }

  /// Rebuild beta from shift weights w_n = beta_{n+1}/beta_n with beta_0 = 1.
  static WeightSequence from_shift_weights(const VectorXd& w) {
    VectorXd beta(w.size() + 1);
    beta[0] = 1.0;
    for (Index n = 0; n < w.size(); ++n) beta[n + 1] = beta[n] * w[n];
    return WeightSequence(std::move(beta));
  }

  Index size() const { return beta_.size(); }
  double beta(Index n) const { return beta_[n]; }
  const VectorXd& values() const { return beta_; }

  /// Shift weights w_n = beta_{n+1}/beta_n, n = 0..size-2.
  VectorXd shift_weights() const {
    VectorXd w(beta_.size() - 1);
    for (Index n = 0; n + 1 < beta_.size(); ++n) w[n] = beta_[n + 1] / beta_[n];
    return w;
  }

 private:
  VectorXd beta_;
};

}  // namespace subhardy
