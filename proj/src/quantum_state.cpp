#include "hhgq/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hhgq/errors.hpp"

namespace hhgq {

namespace {

double log_poisson_pmf(double mean, int n) {
  if (mean == 0.0) return n == 0 ? 0.0 : -INFINITY;
  return -mean + n * std::log(mean) - std::lgamma(n + 1.0);
}

void check_n_max(int n_max) {
  if (n_max < 0) throw ConfigError("n_max", "must be >= 0, got " + std::to_string(n_max));
}

void check_truncation(double mean, int n_max, double max_tail) {
  if (max_tail >= kNoTruncationCheck) return;
  const double tail = poisson_tail(mean, n_max);
  if (tail > max_tail) {
    const int suggested = poisson_cutoff(mean);
    throw TruncationError("Fock truncation n_max=" + std::to_string(n_max) + " discards Poisson mass " +
                              std::to_string(tail) + " > " + std::to_string(max_tail) +
                              " (mean " + std::to_string(mean) + "); use n_max >= " +
                              std::to_string(suggested),
                          suggested);
  }
}

// Coherent-state Fock amplitudes e^{-|chi|^2/2} chi^n / sqrt(n!) with the
// modulus assembled in log-space.
Eigen::VectorXd coherent_moduli(double chi_abs, int n_max) {
  Eigen::VectorXd a(n_max + 1);
  if (chi_abs == 0.0) {
    a.setZero();
    a(0) = 1.0;
    return a;
  }
  const double log_abs = std::log(chi_abs);
  const double half_mean = 0.5 * chi_abs * chi_abs;
  for (int n = 0; n <= n_max; ++n) {
    a(n) = std::exp(-half_mean + n * log_abs - 0.5 * std::lgamma(n + 1.0));
  }
  return a;
}

Eigen::VectorXcd coherent_amplitudes(std::complex<double> chi, int n_max) {
  const Eigen::VectorXd a = coherent_moduli(std::abs(chi), n_max);
  const double theta = std::arg(chi);
  Eigen::VectorXcd c(n_max + 1);
  for (int n = 0; n <= n_max; ++n) c(n) = std::polar(a(n), n * theta);
  return c;
}

}  // namespace

int poisson_cutoff(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw ConfigError("mean", "must be finite and >= 0");
  return static_cast<int>(std::ceil(mean + 12.0 * std::sqrt(mean + 1.0)));
}

double poisson_tail(double mean, int n_max) {
  if (mean == 0.0) return 0.0;
  if (n_max + 1.0 <= mean) {
    double head = 0.0;
    for (int n = 0; n <= n_max; ++n) head += std::exp(log_poisson_pmf(mean, n));
    return std::max(0.0, 1.0 - head);
  }
  double term = std::exp(log_poisson_pmf(mean, n_max + 1));
  double tail = 0.0;
  for (int n = n_max + 1; term > 1e-300; ++n) {
    tail += term;
    if (term < 1e-18 * tail) break;
    term *= mean / (n + 1.0);
  }
  return tail;
}

ModeDensityMatrix ModeDensityMatrix::dense(int q, Eigen::MatrixXcd entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw ConfigError("rho", "density matrix must be square and non-empty");
  }
  ModeDensityMatrix rho;
  rho.q_ = q;
  rho.n_max_ = static_cast<int>(entries.rows()) - 1;
  rho.dense_ = std::move(entries);
  return rho;
}

ModeDensityMatrix ModeDensityMatrix::diagonal(int q, Eigen::VectorXd populations) {
  if (populations.size() == 0) throw ConfigError("rho", "density matrix must be non-empty");
  ModeDensityMatrix rho;
  rho.q_ = q;
  rho.n_max_ = static_cast<int>(populations.size()) - 1;
  rho.diagonal_only_ = true;
  rho.diag_ = std::move(populations);
  return rho;
}

std::complex<double> ModeDensityMatrix::operator()(int n, int m) const {
  if (diagonal_only_) return n == m ? std::complex<double>(diag_(n), 0.0) : 0.0;
  return dense_(n, m);
}

double ModeDensityMatrix::population(int n) const {
  return diagonal_only_ ? diag_(n) : dense_(n, n).real();
}

double ModeDensityMatrix::trace() const {
  return diagonal_only_ ? diag_.sum() : dense_.trace().real();
}

Eigen::MatrixXcd ModeDensityMatrix::to_dense() const {
  if (!diagonal_only_) return dense_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
  m.diagonal() = diag_.cast<std::complex<double>>();
  return m;
}

ModeDensityMatrix coherent_mode_state(std::complex<double> chi, int n_max, double max_tail, int q) {
  check_n_max(n_max);
  check_truncation(std::norm(chi), n_max, max_tail);
  const Eigen::VectorXcd c = coherent_amplitudes(chi, n_max);
  return ModeDensityMatrix::dense(q, c * c.adjoint());
}

ModeDensityMatrix phase_averaged_mode_state(double chi_abs, int q, int n_phi, int n_max,
                                            double max_tail) {
  check_n_max(n_max);
  if (q < 1) throw ConfigError("q", "harmonic order must be >= 1");
  if (chi_abs < 0.0 || !std::isfinite(chi_abs)) throw ConfigError("chi_abs", "must be finite and >= 0");
  const long long min_n_phi = static_cast<long long>(q) * n_max + 1;
  if (n_phi < min_n_phi) {
    throw AliasingError("n_phi=" + std::to_string(n_phi) + " <= q*n_max=" +
                            std::to_string(min_n_phi - 1) + "; smallest admissible n_phi is " +
                            std::to_string(min_n_phi),
                        static_cast<int>(min_n_phi));
  }
  check_truncation(chi_abs * chi_abs, n_max, max_tail);

  const Eigen::VectorXd a = coherent_moduli(chi_abs, n_max);
  const int dim = n_max + 1;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXcd c(dim);
  const double step = 2.0 * std::numbers::pi / n_phi;
  for (int k = 0; k < n_phi; ++k) {
    // Phase -q n phi_k reduced exactly modulo 2 pi in integer arithmetic.
    for (int n = 0; n < dim; ++n) {
      const long long turns = (static_cast<long long>(q) * n * k) % n_phi;
      c(n) = std::polar(a(n), -step * static_cast<double>(turns));
    }
    rho.noalias() += c * c.adjoint();
  }
  rho /= static_cast<double>(n_phi);
  return ModeDensityMatrix::dense(q, std::move(rho));
}

ModeDensityMatrix poisson_mode_state(double mean, int n_max, double max_tail, int q) {
  check_n_max(n_max);
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw ConfigError("mean", "must be finite and >= 0");
  check_truncation(mean, n_max, max_tail);
  Eigen::VectorXd p(n_max + 1);
  for (int n = 0; n <= n_max; ++n) p(n) = std::exp(log_poisson_pmf(mean, n));
  return ModeDensityMatrix::diagonal(q, std::move(p));
}

ModeDensityMatrix coherent_mixture_state(const std::vector<double>& weights,
                                         const std::vector<std::complex<double>>& chis, int n_max,
                                         int q) {
  check_n_max(n_max);
  if (weights.size() != chis.size() || weights.empty()) {
    throw ConfigError("weights", "need one weight per amplitude");
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
  for (std::size_t k = 0; k < chis.size(); ++k) {
    const Eigen::VectorXcd c = coherent_amplitudes(chis[k], n_max);
    rho.noalias() += weights[k] * (c * c.adjoint());
  }
  return ModeDensityMatrix::dense(q, std::move(rho));
}

double l1_coherence(const ModeDensityMatrix& rho) {
  if (rho.is_diagonal_storage()) return 0.0;
  double sum = 0.0;
  for (int n = 0; n < rho.dim(); ++n)
    for (int m = 0; m < rho.dim(); ++m)
      if (n != m) sum += std::abs(rho(n, m));
  return sum;
}

double mean_photon(const ModeDensityMatrix& rho) {
  double sum = 0.0;
  for (int n = 1; n < rho.dim(); ++n) sum += n * rho.population(n);
  return sum;
}

std::vector<double> photon_distribution(const ModeDensityMatrix& rho) {
  std::vector<double> p(rho.dim());
  for (int n = 0; n < rho.dim(); ++n) p[n] = rho.population(n);
  return p;
}

std::complex<double> mean_field_amplitude(const ModeDensityMatrix& rho) {
  if (rho.is_diagonal_storage()) return 0.0;
  std::complex<double> sum = 0.0;
  for (int n = 0; n + 1 < rho.dim(); ++n) sum += std::sqrt(n + 1.0) * rho(n + 1, n);
  return sum;
}

double purity(const ModeDensityMatrix& rho) {
  if (rho.is_diagonal_storage()) return rho.to_dense().diagonal().squaredNorm();
  return rho.to_dense().squaredNorm();
}

double hermiticity_error(const ModeDensityMatrix& rho) {
  if (rho.is_diagonal_storage()) return 0.0;
  const Eigen::MatrixXcd m = rho.to_dense();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const ModeDensityMatrix& rho) {
  if (rho.is_diagonal_storage()) {
    const std::vector<double> p = photon_distribution(rho);
    return *std::min_element(p.begin(), p.end());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.to_dense(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

CoherenceReport coherence_report(const ModeDensityMatrix& rho) {
  return {l1_coherence(rho), mean_field_amplitude(rho), mean_photon(rho), photon_distribution(rho)};
}

}  // namespace hhgq
