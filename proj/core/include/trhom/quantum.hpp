#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "trhom/grid.hpp"
#include "trhom/sfg.hpp"

namespace trhom {

// ============================================================================
// Finite-dimensional two-photon model used to cross-check the spectral
// engines against first principles.
//
// Each interferometer arm carries n discrete frequency bins
//   w_j = omega0 + (j - (n-1)/2) * delta,   j = 0 .. n-1,   n even,
// so the bins sit symmetrically about omega0 at half-integer multiples of
// delta and mirror(j) = n-1-j pairs w_j with 2*omega0 - w_j. Single-photon
// mode index: upper arm j -> j, lower arm j -> n + j (dimension 2n).
//
// Two-photon states are symmetric matrices M over the 2n modes:
//   |psi> = sum_{pq} M_pq  a+_p a+_q |0>,     <psi|psi> = 2 sum |M_pq|^2,
// and a single-photon unitary U acts as M -> U M U^T. The downconversion
// source and the upconversion detector are not part of U; they enter as the
// frequency-anticorrelated pair state (preparation) and as the projection
// onto that same state (a narrowband-filtered sum-frequency detector whose
// click time carries no information).
//
// Detection time is modeled in the conjugate basis of the bins: per arm the
// DFT wavepackets |t_a>, t_a = a * 2pi/(n delta), form an orthonormal basis,
// and summing |<outcome|psi>|^2 over all (t_a, t_b) coincidence outcomes
// realizes the integration over detection times exactly.
// ============================================================================

class ModeBasis {
public:
  ModeBasis(std::size_t n_modes, double omega0, double delta);

  std::size_t n_modes() const { return n_; }
  double omega0() const { return omega0_; }
  double delta() const { return delta_; }
  std::size_t dim() const { return 2 * n_; }  // both arms

  double omega(std::size_t j) const {
    return omega0_ +
           (static_cast<double>(j) - static_cast<double>(n_ - 1) / 2.0) * delta_;
  }
  std::size_t mirror(std::size_t j) const { return n_ - 1 - j; }
  // Period of the conjugate time basis.
  double time_step() const { return kTwoPi / (static_cast<double>(n_) * delta_); }

  bool operator==(const ModeBasis& o) const {
    return n_ == o.n_ && omega0_ == o.omega0_ && delta_ == o.delta_;
  }

private:
  std::size_t n_;
  double omega0_;
  double delta_;
};

// One photon per arm: amp(j, k) is the amplitude for (upper bin j, lower bin
// k). Normalized to sum |amp|^2 = 1 within 1e-12.
class TwoPhotonState {
public:
  TwoPhotonState(ModeBasis basis, Eigen::MatrixXcd amp);
  static TwoPhotonState normalized(const ModeBasis& basis,
                                   const Eigen::MatrixXcd& amp);

  const ModeBasis& basis() const { return basis_; }
  const Eigen::MatrixXcd& amp() const { return amp_; }

private:
  ModeBasis basis_;
  Eigen::MatrixXcd amp_;
};

// 2n x 2n single-photon unitary over both arms; unitarity enforced within
// 1e-10 at construction.
class LinearOpticsUnitary {
public:
  LinearOpticsUnitary(ModeBasis basis, Eigen::MatrixXcd u);

  const ModeBasis& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return u_; }

private:
  ModeBasis basis_;
  Eigen::MatrixXcd u_;
};

// Frequency-anticorrelated pair: amp(j, k) proportional to f_j when
// k == mirror(j), zero otherwise; normalized.
TwoPhotonState make_anticorrelated_state(
    const ModeBasis& basis, const std::vector<std::complex<double>>& f);

// f_j = E(w_j) E(2 omega0 - w_j) for a Gaussian pulse amplitude of width
// sigma, i.e. exp(-(w_j - omega0)^2 / sigma^2): the pair amplitudes whose
// coincidence curve corresponds to the classical closed form for that pulse.
std::vector<std::complex<double>> gaussian_pair_amplitudes(
    const ModeBasis& basis, double sigma);

// Delay x in the upper arm, dispersion phases in the lower arm, then a 50/50
// beam splitter combining equal-frequency bins of the two arms.
LinearOpticsUnitary build_hom_unitary(const ModeBasis& basis, double x_um,
                                      const DispersionModel& dispersion);

// The n conjugate-basis delays {a * 2pi/(n delta)}; on these bins the
// tau-resolved reversed curve sums exactly to the forward coincidence curve.
std::vector<double> canonical_tau_bins(const ModeBasis& basis);

struct ReversalCheck {
  double p_forward;   // |<f| U |i>|^2
  double p_reversed;  // |<i| U^-1 |f>|^2
};

// Evaluates both directions independently (forward evolution of i vs inverse
// evolution of f).
ReversalCheck reversal_identity_check(const LinearOpticsUnitary& u,
                                      const TwoPhotonState& i_state,
                                      const TwoPhotonState& f_state);

// Forward process: evolve the pair state through u_of_x(x) and sum the
// squared amplitudes of every time-bin coincidence outcome (one photon per
// arm).
Interferogram forward_coincidence(
    const std::function<LinearOpticsUnitary(double)>& u_of_x,
    const std::vector<double>& x_axis, const TwoPhotonState& initial);

// Reversed process: for each tau prepare the two delayed single-photon
// wavepackets (upper arm delayed by tau), evolve through U(x)^-1, and sum
// |<pair(t)|...>|^2 over the time translates of the projection state.
// Returns the (x, tau) map and its tau-sum.
struct ReversedResult {
  InterferogramMap map;
  Interferogram tau_sum;
};
ReversedResult reversed_coincidence(
    const std::function<LinearOpticsUnitary(double)>& u_of_x,
    const std::vector<double>& x_axis, const std::vector<double>& tau_axis,
    const TwoPhotonState& pair_state);

// Haar-distributed unitary via QR of a complex Gaussian matrix with the
// R-diagonal phase fix.
Eigen::MatrixXcd random_unitary(std::size_t dim, std::mt19937_64& rng);
TwoPhotonState random_pair_state(const ModeBasis& basis, std::mt19937_64& rng);

// Bundled self-check suite used by the CLI `oracle` subcommand and the
// acceptance tests.
struct OracleSuiteParams {
  std::size_t n_modes = 8;
  double omega0 = 2.4087;     // rad/fs
  double sigma = 0.05;        // pulse width backing the pair amplitudes
  double delta_factor = 0.4;  // bin spacing = delta_factor * sigma
  std::size_t trials = 100;   // reversal-identity random instances
  std::uint64_t seed = 42;
  double x_max_um = 24.0;     // forward/reversed comparison window [-x, x]
  std::size_t x_steps = 97;
  double phi2_fs2 = 600.0;    // even-order insensitivity probe
};

struct OracleReport {
  std::size_t trials;
  double identity_max_abs_dev;     // max |p_forward - p_reversed|
  double fwdrev_pearson;           // tau-summed reversed vs forward
  double fwdrev_max_rel_dev;       // after least-squares scaling
  double even_order_max_rel_dev;   // phi2 on vs off, tau-summed curve
  bool passed;
};

OracleReport run_oracle_suite(const OracleSuiteParams& params);

}  // namespace trhom
