#pragma once

// Phase-space representations of the driving mode: Husimi Q functions of the
// three drive types with matching quadrature rules, the generalized P function
// built from Q, and the Gaussian -> delta classical-limit machinery.

#include <complex>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "hhgq/field.hpp"

namespace hhgq {

/// How the drive is represented when integrating over coherent components.
///   Quantum:   full Husimi spread (unit Gaussian width in alpha units).
///   Classical: the kappa -> 0 limit at fixed E_alpha = 2 kappa alpha, where
///              each Gaussian collapses to a point in the field plane.
enum class DriveLimit { Quantum, Classical };

struct QuadratureSpec {
  int radial_nodes = 40;
  int angular_nodes = 64;
  DriveLimit limit = DriveLimit::Quantum;
};

struct QuadratureNode {
  std::complex<double> alpha;
  double weight = 0.0;
};

/// Q(alpha) = <alpha|rho|alpha> / pi for a driving state, plus a quadrature
/// rule for integrals of the form  int d^2 alpha Q(alpha) f(alpha).
///
/// The rule is a polar product: Gauss-Laguerre in u = |alpha - center|^2 and
/// uniform angles. Coherent drives are centred on alpha_0, phase mixtures use
/// one such rule per mixture component, and Fock(n) uses the generalized
/// Laguerre weight u^n e^{-u} about the origin.
class HusimiSampler {
 public:
  HusimiSampler(DrivingState drive, QuadratureSpec spec = {});

  double operator()(std::complex<double> alpha) const;
  /// log Q(alpha); -inf where Q vanishes.
  double log_q(std::complex<double> alpha) const;

  const DrivingState& drive() const noexcept { return drive_; }
  const QuadratureSpec& spec() const noexcept { return spec_; }

  std::vector<QuadratureNode> nodes() const;

  template <typename F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (const QuadratureNode& node : nodes()) sum += node.weight * f(node.alpha);
    return sum;
  }

 private:
  DrivingState drive_;
  QuadratureSpec spec_;
};

HusimiSampler husimi(const DrivingState& drive, QuadratureSpec spec = {});

/// P(alpha, beta*) = (1 / 4 pi) exp(-|alpha - beta*|^2 / 4) Q((alpha + beta*) / 2).
class GeneralizedP {
 public:
  explicit GeneralizedP(HusimiSampler q) : q_(std::move(q)) {}
  double operator()(std::complex<double> alpha, std::complex<double> beta_conj) const;
  const HusimiSampler& husimi() const noexcept { return q_; }

 private:
  HusimiSampler q_;
};

GeneralizedP generalized_p(const DrivingState& drive);

struct DeltaProbePoint {
  double kappa = 0.0;
  double value = 0.0;  // Gaussian-smeared functional
  double error = 0.0;  // |value - F(center)|
};

/// For each kappa, integrates F against the normalized kernel
///   exp(-|E - center|^2 / (16 kappa^2)) / (16 pi kappa^2)
/// over the complex field plane and reports the deviation from F(center).
/// Throws ScanError for fewer than 3 kappa values and QuadratureError when F
/// is not finite on the nodes.
std::vector<DeltaProbePoint> delta_limit_probe(std::span<const double> kappa_values,
                                               const std::function<double(std::complex<double>)>& f,
                                               std::complex<double> center = 0.0,
                                               int radial_nodes = 40, int angular_nodes = 64);

/// error[k+1] / error[k] for consecutive probe points.
std::vector<double> error_ratios(const std::vector<DeltaProbePoint>& points);

/// (n + q)! / n!  = int d^2 alpha Q_n(alpha) |alpha|^{2q}.
double fock_moment(int n, int q);
double log_fock_moment(int n, int q);

/// Writes Q on a points x points Cartesian grid centred at `center` with
/// half-width `half_width` (columns re_alpha, im_alpha, q).
void write_husimi_csv(const std::filesystem::path& path, const HusimiSampler& sampler,
                      std::complex<double> center, double half_width, int points);

}  // namespace hhgq
