#pragma once

#include <vector>

namespace hhgq {

/// Gauss rule for the weight u^alpha e^{-u} on [0, inf). Weights are scaled to
/// sum to 1, i.e. the rule integrates against the Gamma(alpha + 1) density.
struct GaussLaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch construction from the Laguerre three-term recurrence.
GaussLaguerreRule gauss_laguerre(int n_nodes, double alpha = 0.0);

}  // namespace hhgq
