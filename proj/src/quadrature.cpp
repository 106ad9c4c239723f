#include "hhgq/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "hhgq/errors.hpp"

namespace hhgq {

namespace {

GaussLaguerreRule build_rule(int n_nodes, double alpha) {
  // Jacobi matrix of the monic generalized Laguerre polynomials:
  // diagonal 2k + alpha + 1, off-diagonal sqrt(k (k + alpha)).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  for (int k = 0; k < n_nodes; ++k) {
    jacobi(k, k) = 2.0 * k + alpha + 1.0;
    if (k + 1 < n_nodes) {
      const double b = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
      jacobi(k, k + 1) = b;
      jacobi(k + 1, k) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) throw QuadratureError("Gauss-Laguerre eigensolver failed");

  GaussLaguerreRule rule;
  rule.nodes.resize(n_nodes);
  rule.weights.resize(n_nodes);
  double total = 0.0;
  for (int k = 0; k < n_nodes; ++k) {
    rule.nodes[k] = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    rule.weights[k] = v0 * v0;
    total += rule.weights[k];
  }
  for (double& w : rule.weights) w /= total;
  return rule;
}

}  // namespace

GaussLaguerreRule gauss_laguerre(int n_nodes, double alpha) {
  if (n_nodes < 1) throw ConfigError("radial_nodes", "must be >= 1");
  if (!(alpha > -1.0)) throw ConfigError("alpha", "Laguerre parameter must be > -1");

  static std::mutex mutex;
  static std::map<std::pair<int, double>, GaussLaguerreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({n_nodes, alpha});
  if (it == cache.end()) it = cache.emplace(std::pair{n_nodes, alpha}, build_rule(n_nodes, alpha)).first;
  return it->second;
}

}  // namespace hhgq
