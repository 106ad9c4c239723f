#include "hhgq/phasespace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hhgq/errors.hpp"
#include "hhgq/quadrature.hpp"

namespace hhgq {

using std::numbers::pi;
using cd = std::complex<double>;

namespace {

const double kLogPi = std::log(pi);

void append_polar_rule(std::vector<QuadratureNode>& out, cd center, const GaussLaguerreRule& radial,
                       int angular_nodes, double scale) {
  const double dtheta = 2.0 * pi / angular_nodes;
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double r = std::sqrt(radial.nodes[i]);
    const double w = scale * radial.weights[i] / angular_nodes;
    for (int j = 0; j < angular_nodes; ++j) out.push_back({center + std::polar(r, j * dtheta), w});
  }
}

}  // namespace

HusimiSampler::HusimiSampler(DrivingState drive, QuadratureSpec spec)
    : drive_(std::move(drive)), spec_(spec) {
  validate(drive_);
  if (spec_.radial_nodes < 1) throw ConfigError("quadrature.radial_nodes", "must be >= 1");
  if (spec_.angular_nodes < 1) throw ConfigError("quadrature.angular_nodes", "must be >= 1");
}

double HusimiSampler::log_q(cd alpha) const {
  if (const auto* c = std::get_if<Coherent>(&drive_)) return -std::norm(alpha - c->alpha) - kLogPi;
  if (const auto* p = std::get_if<PhaseAveraged>(&drive_)) {
    // Uniform phase sum of coherent Gaussians, combined with log-sum-exp.
    std::vector<double> logs(p->n_phi);
    for (int k = 0; k < p->n_phi; ++k) {
      logs[k] = -std::norm(alpha - std::polar(p->alpha_abs, mixture_phase(k, p->n_phi)));
    }
    const double top = *std::max_element(logs.begin(), logs.end());
    double sum = 0.0;
    for (double l : logs) sum += std::exp(l - top);
    return top + std::log(sum / p->n_phi) - kLogPi;
  }
  const int n = std::get<Fock>(drive_).n;
  const double r2 = std::norm(alpha);
  if (n == 0) return -r2 - kLogPi;
  if (r2 == 0.0) return -std::numeric_limits<double>::infinity();
  return n * std::log(r2) - r2 - std::lgamma(n + 1.0) - kLogPi;
}

double HusimiSampler::operator()(cd alpha) const { return std::exp(log_q(alpha)); }

std::vector<QuadratureNode> HusimiSampler::nodes() const {
  std::vector<QuadratureNode> out;
  if (spec_.limit == DriveLimit::Classical) {
    if (const auto* c = std::get_if<Coherent>(&drive_)) {
      out.push_back({c->alpha, 1.0});
    } else if (const auto* p = std::get_if<PhaseAveraged>(&drive_)) {
      for (int k = 0; k < p->n_phi; ++k) {
        out.push_back({std::polar(p->alpha_abs, mixture_phase(k, p->n_phi)), 1.0 / p->n_phi});
      }
    } else {
      // Q_n(E / 2 kappa) d^2E / 4 kappa^2 collapses onto E = 0.
      out.push_back({0.0, 1.0});
    }
    return out;
  }

  if (const auto* c = std::get_if<Coherent>(&drive_)) {
    append_polar_rule(out, c->alpha, gauss_laguerre(spec_.radial_nodes), spec_.angular_nodes, 1.0);
  } else if (const auto* p = std::get_if<PhaseAveraged>(&drive_)) {
    const GaussLaguerreRule rule = gauss_laguerre(spec_.radial_nodes);
    out.reserve(static_cast<std::size_t>(p->n_phi) * spec_.radial_nodes * spec_.angular_nodes);
    for (int k = 0; k < p->n_phi; ++k) {
      append_polar_rule(out, std::polar(p->alpha_abs, mixture_phase(k, p->n_phi)), rule,
                        spec_.angular_nodes, 1.0 / p->n_phi);
    }
  } else {
    const int n = std::get<Fock>(drive_).n;
    append_polar_rule(out, 0.0, gauss_laguerre(spec_.radial_nodes, n), spec_.angular_nodes, 1.0);
  }
  return out;
}

HusimiSampler husimi(const DrivingState& drive, QuadratureSpec spec) { return HusimiSampler(drive, spec); }

double GeneralizedP::operator()(cd alpha, cd beta_conj) const {
  const double log_gauss = -std::norm(alpha - beta_conj) / 4.0 - std::log(4.0 * pi);
  return std::exp(log_gauss + q_.log_q(0.5 * (alpha + beta_conj)));
}

GeneralizedP generalized_p(const DrivingState& drive) { return GeneralizedP(HusimiSampler(drive)); }

std::vector<DeltaProbePoint> delta_limit_probe(std::span<const double> kappa_values,
                                               const std::function<double(cd)>& f, cd center,
                                               int radial_nodes, int angular_nodes) {
  if (kappa_values.size() < 3) throw ScanError("delta_limit_probe needs at least 3 kappa values");
  const GaussLaguerreRule rule = gauss_laguerre(radial_nodes);
  const double f_center = f(center);
  if (!std::isfinite(f_center)) throw QuadratureError("test functional is not finite at the center");

  std::vector<DeltaProbePoint> out;
  for (double kappa : kappa_values) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ConfigError("kappa", "must be finite and > 0");
    // |E - center|^2 / (16 kappa^2) = u  =>  |E - center| = 4 kappa sqrt(u).
    std::vector<QuadratureNode> nodes;
    append_polar_rule(nodes, 0.0, rule, angular_nodes, 1.0);
    double value = 0.0;
    for (const QuadratureNode& node : nodes) {
      const double fv = f(center + 4.0 * kappa * node.alpha);
      if (!std::isfinite(fv)) throw QuadratureError("test functional diverges on the probe nodes");
      value += node.weight * fv;
    }
    out.push_back({kappa, value, std::abs(value - f_center)});
  }
  return out;
}

std::vector<double> error_ratios(const std::vector<DeltaProbePoint>& points) {
  std::vector<double> ratios;
  for (std::size_t k = 1; k < points.size(); ++k) ratios.push_back(points[k].error / points[k - 1].error);
  return ratios;
}

double log_fock_moment(int n, int q) {
  if (n < 0 || q < 0) throw ConfigError("fock_moment", "n and q must be >= 0");
  return std::lgamma(n + q + 1.0) - std::lgamma(n + 1.0);
}

double fock_moment(int n, int q) {
  if (n < 0 || q < 0) throw ConfigError("fock_moment", "n and q must be >= 0");
  double product = 1.0;
  for (int k = 1; k <= q; ++k) {
    product *= static_cast<double>(n) + k;
    if (!std::isfinite(product)) return std::exp(log_fock_moment(n, q));
  }
  return product;
}

}  // namespace hhgq
