#pragma once

// Single-mode field states in a truncated Fock basis and the diagnostics used
// to tell coherent from phase-incoherent harmonic radiation.

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace hhgq {

/// Largest Poisson probability mass allowed beyond the truncation by default.
inline constexpr double kPoissonTailTolerance = 1e-12;

/// Passing this as `max_tail` disables the truncation check.
inline constexpr double kNoTruncationCheck = 1.0;

/// Truncation rule n_max = ceil(mean + 12 sqrt(mean + 1)).
int poisson_cutoff(double mean);

/// Probability mass of Poisson(mean) above n_max, summed directly.
double poisson_tail(double mean, int n_max);

/// Density matrix rho_{nm}, 0 <= n, m <= n_max, of one harmonic mode.
///
/// States that are diagonal by construction keep only the diagonal, which lets
/// drive states with very large photon numbers be represented. Entries are the
/// raw truncated values; the trace is 1 minus the discarded tail.
class ModeDensityMatrix {
 public:
  static ModeDensityMatrix dense(int q, Eigen::MatrixXcd entries);
  static ModeDensityMatrix diagonal(int q, Eigen::VectorXd populations);

  int q() const noexcept { return q_; }
  int n_max() const noexcept { return n_max_; }
  int dim() const noexcept { return n_max_ + 1; }
  bool is_diagonal_storage() const noexcept { return diagonal_only_; }

  std::complex<double> operator()(int n, int m) const;
  double population(int n) const;
  double trace() const;
  Eigen::MatrixXcd to_dense() const;

 private:
  ModeDensityMatrix() = default;

  int q_ = 0;
  int n_max_ = 0;
  bool diagonal_only_ = false;
  Eigen::MatrixXcd dense_;
  Eigen::VectorXd diag_;
};

/// |chi><chi| truncated at n_max. Throws TruncationError when the Poisson tail
/// beyond n_max exceeds `max_tail`.
ModeDensityMatrix coherent_mode_state(std::complex<double> chi, int n_max,
                                      double max_tail = kPoissonTailTolerance,
                                      int q = 0);

/// Uniform n_phi-point mixture of |e^{-i q phi_k} chi_abs>, phi_k = 2 pi k / n_phi.
/// Requires n_phi > q * n_max so that every off-diagonal phase sum is a full
/// sum of non-trivial roots of unity; otherwise throws AliasingError.
ModeDensityMatrix phase_averaged_mode_state(double chi_abs, int q, int n_phi, int n_max,
                                            double max_tail = kPoissonTailTolerance);

/// Diagonal state with Poisson(mean) populations.
ModeDensityMatrix poisson_mode_state(double mean, int n_max,
                                     double max_tail = kPoissonTailTolerance, int q = 0);

/// Weighted mixture sum_k w_k |chi_k><chi_k| (no truncation check).
ModeDensityMatrix coherent_mixture_state(const std::vector<double>& weights,
                                         const std::vector<std::complex<double>>& chis,
                                         int n_max, int q = 0);

/// Sum of |rho_nm| over n != m.
double l1_coherence(const ModeDensityMatrix& rho);
double mean_photon(const ModeDensityMatrix& rho);
std::vector<double> photon_distribution(const ModeDensityMatrix& rho);
/// Tr[a rho].
std::complex<double> mean_field_amplitude(const ModeDensityMatrix& rho);
double purity(const ModeDensityMatrix& rho);
/// max |rho_nm - conj(rho_mn)|
double hermiticity_error(const ModeDensityMatrix& rho);
double min_eigenvalue(const ModeDensityMatrix& rho);

struct CoherenceReport {
  double l1_offdiagonal = 0.0;
  std::complex<double> mean_a;
  double mean_photon = 0.0;
  std::vector<double> photon_distribution;
};

CoherenceReport coherence_report(const ModeDensityMatrix& rho);

}  // namespace hhgq
