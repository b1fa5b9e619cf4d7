#include "trhom/quantum.hpp"

#include <cmath>
#include <string>

#include "trhom/errors.hpp"

namespace trhom {

namespace {

// Symmetric two-photon matrix representation over the 2n single-photon modes:
//   |psi> = sum_{pq} M_pq a+_p a+_q |0>,  M symmetric,
//   <phi_N|psi_M> = 2 sum_pq conj(N_pq) M_pq,
//   single-photon U acts as M -> U M U^T.
// A state with amplitude amp(j,k) for (upper j, lower k) embeds as
// M(j, n+k) = M(n+k, j) = amp(j,k)/2, which keeps 2 sum|M|^2 = sum|amp|^2.
Eigen::MatrixXcd embed_pair(const TwoPhotonState& s) {
  const auto n = static_cast<Eigen::Index>(s.basis().n_modes());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      m(j, n + k) = 0.5 * s.amp()(j, k);
      m(n + k, j) = m(j, n + k);
    }
  return m;
}

Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& u) {
  return u * m * u.transpose();
}

std::complex<double> overlap(const Eigen::MatrixXcd& bra_m,
                             const Eigen::MatrixXcd& ket_m) {
  return 2.0 * bra_m.conjugate().cwiseProduct(ket_m).sum();
}

// <a b | psi_M>: projection of a symmetric-matrix state onto the product of
// two single-photon vectors; equals overlap(embed(a,b), M) = 2 a^H M conj(b).
std::complex<double> product_projection(const Eigen::VectorXcd& a,
                                        const Eigen::VectorXcd& b,
                                        const Eigen::MatrixXcd& m) {
  return 2.0 * (a.adjoint() * m * b.conjugate())(0, 0);
}

// Single-photon wavepacket localized at time t in one arm:
//   v_j = exp(-i w_j t) / sqrt(n)  on that arm's block, zero on the other.
// On the canonical bins t = a * 2pi/(n delta) these are the orthonormal DFT
// basis of the arm (up to a global phase), so summing outcome probabilities
// over all bins realizes the integration over detection time exactly.
Eigen::VectorXcd time_wavepacket(const ModeBasis& basis, double t,
                                 bool lower_arm) {
  const auto n = static_cast<Eigen::Index>(basis.n_modes());
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(basis.n_modes()));
  const Eigen::Index base = lower_arm ? n : 0;
  for (Eigen::Index j = 0; j < n; ++j)
    v(base + j) =
        std::polar(scale, -basis.omega(static_cast<std::size_t>(j)) * t);
  return v;
}

void check_same_basis(const ModeBasis& a, const ModeBasis& b,
                      const char* where) {
  if (!(a == b))
    throw InvalidInput(std::string(where) + ": mode bases do not match");
}

void check_axis(const std::vector<double>& axis, const char* name,
                const char* where) {
  if (axis.size() < 2)
    throw InvalidInput(std::string(where) + ": " + name +
                       " needs at least two points");
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const auto n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa <= 0.0 || sbb <= 0.0)
    throw NumericFailure("pearson: degenerate (constant) curve");
  return sab / std::sqrt(saa * sbb);
}

std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  std::vector<double> v(steps);
  const double d = (hi - lo) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i)
    v[i] = lo + static_cast<double>(i) * d;
  return v;
}

}  // namespace

ModeBasis::ModeBasis(std::size_t n_modes, double omega0, double delta)
    : n_(n_modes), omega0_(omega0), delta_(delta) {
  if (n_modes < 4 || n_modes > 32 || n_modes % 2 != 0)
    throw InvalidInput("ModeBasis: n_modes must be even and in [4, 32], got " +
                       std::to_string(n_modes));
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw InvalidInput("ModeBasis: delta must be positive and finite");
  if (!std::isfinite(omega0) || !(omega0 > 0.0))
    throw InvalidInput("ModeBasis: omega0 must be positive and finite");
}

TwoPhotonState::TwoPhotonState(ModeBasis basis, Eigen::MatrixXcd amp)
    : basis_(basis), amp_(std::move(amp)) {
  const auto n = static_cast<Eigen::Index>(basis_.n_modes());
  if (amp_.rows() != n || amp_.cols() != n)
    throw InvalidInput("TwoPhotonState: amplitude matrix must be n_modes x n_modes");
  if (!amp_.allFinite())
    throw InvalidInput("TwoPhotonState: non-finite amplitude");
  const double nrm2 = amp_.squaredNorm();
  if (std::abs(nrm2 - 1.0) > 1e-12)
    throw InvalidInput("TwoPhotonState: state not normalized, sum|amp|^2 = " +
                       std::to_string(nrm2));
}

TwoPhotonState TwoPhotonState::normalized(const ModeBasis& basis,
                                          const Eigen::MatrixXcd& amp) {
  if (!amp.allFinite())
    throw InvalidInput("TwoPhotonState: non-finite amplitude");
  const double nrm = amp.norm();
  if (!(nrm > 0.0))
    throw InvalidInput("TwoPhotonState: cannot normalize zero amplitude");
  return TwoPhotonState(basis, amp / nrm);
}

LinearOpticsUnitary::LinearOpticsUnitary(ModeBasis basis, Eigen::MatrixXcd u)
    : basis_(basis), u_(std::move(u)) {
  const auto d = static_cast<Eigen::Index>(basis_.dim());
  if (u_.rows() != d || u_.cols() != d)
    throw InvalidInput("LinearOpticsUnitary: matrix must be 2n x 2n");
  if (!u_.allFinite())
    throw InvalidInput("LinearOpticsUnitary: non-finite entry");
  const double dev =
      (u_.adjoint() * u_ - Eigen::MatrixXcd::Identity(d, d)).norm();
  if (dev > 1e-10)
    throw InvalidInput(
        "LinearOpticsUnitary: matrix is not unitary, |U^H U - 1|_F = " +
        std::to_string(dev));
}

TwoPhotonState make_anticorrelated_state(
    const ModeBasis& basis, const std::vector<std::complex<double>>& f) {
  const std::size_t n = basis.n_modes();
  if (f.size() != n)
    throw InvalidInput("make_anticorrelated_state: need one amplitude per bin");
  Eigen::MatrixXcd amp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j)
    amp(static_cast<Eigen::Index>(j),
        static_cast<Eigen::Index>(basis.mirror(j))) = f[j];
  return TwoPhotonState::normalized(basis, amp);
}

std::vector<std::complex<double>> gaussian_pair_amplitudes(
    const ModeBasis& basis, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw InvalidInput("gaussian_pair_amplitudes: sigma must be positive");
  std::vector<std::complex<double>> f(basis.n_modes());
  for (std::size_t j = 0; j < basis.n_modes(); ++j) {
    const double d = basis.omega(j) - basis.omega0();
    // E(w0+d) * E(w0-d) for E = exp(-d^2/(2 sigma^2))
    f[j] = std::exp(-d * d / (sigma * sigma));
  }
  return f;
}

LinearOpticsUnitary build_hom_unitary(const ModeBasis& basis, double x_um,
                                      const DispersionModel& dispersion) {
  if (!std::isfinite(x_um))
    throw InvalidInput("build_hom_unitary: x must be finite");
  const auto n = static_cast<Eigen::Index>(basis.n_modes());
  const double rt = 1.0 / std::sqrt(2.0);
  const std::complex<double> irt(0.0, rt);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double w = basis.omega(static_cast<std::size_t>(j));
    // upper arm: path-length delay; lower arm: dispersive medium
    const std::complex<double> pu = std::polar(1.0, w * x_um / kSpeedOfLight);
    const std::complex<double> pl = std::polar(1.0, dispersion.phase(w));
    u(j, j) = rt * pu;          // upper -> upper (transmit)
    u(j, n + j) = irt * pl;     // lower -> upper (reflect)
    u(n + j, j) = irt * pu;     // upper -> lower (reflect)
    u(n + j, n + j) = rt * pl;  // lower -> lower (transmit)
  }
  return LinearOpticsUnitary(basis, std::move(u));
}

std::vector<double> canonical_tau_bins(const ModeBasis& basis) {
  std::vector<double> tau(basis.n_modes());
  for (std::size_t b = 0; b < basis.n_modes(); ++b)
    tau[b] = static_cast<double>(b) * basis.time_step();
  return tau;
}

ReversalCheck reversal_identity_check(const LinearOpticsUnitary& u,
                                      const TwoPhotonState& i_state,
                                      const TwoPhotonState& f_state) {
  check_same_basis(u.basis(), i_state.basis(), "reversal_identity_check");
  check_same_basis(u.basis(), f_state.basis(), "reversal_identity_check");
  const Eigen::MatrixXcd mi = embed_pair(i_state);
  const Eigen::MatrixXcd mf = embed_pair(f_state);
  // forward: evolve i with U, project on f; reversed: evolve f with U^-1,
  // project on i. Both sides are computed independently.
  const std::complex<double> a_fwd = overlap(mf, evolve(mi, u.matrix()));
  const std::complex<double> a_rev =
      overlap(mi, evolve(mf, u.matrix().adjoint()));
  return ReversalCheck{std::norm(a_fwd), std::norm(a_rev)};
}

Interferogram forward_coincidence(
    const std::function<LinearOpticsUnitary(double)>& u_of_x,
    const std::vector<double>& x_axis, const TwoPhotonState& initial) {
  check_axis(x_axis, "x_axis", "forward_coincidence");
  const ModeBasis& basis = initial.basis();
  const std::size_t n = basis.n_modes();

  // Detection-time outcomes, one photon per arm; independent of x.
  std::vector<Eigen::VectorXcd> upper_bins(n), lower_bins(n);
  for (std::size_t a = 0; a < n; ++a) {
    const double t = static_cast<double>(a) * basis.time_step();
    upper_bins[a] = time_wavepacket(basis, t, false);
    lower_bins[a] = time_wavepacket(basis, t, true);
  }

  const Eigen::MatrixXcd m_in = embed_pair(initial);
  std::vector<double> values;
  values.reserve(x_axis.size());
  for (double x : x_axis) {
    const LinearOpticsUnitary u = u_of_x(x);
    check_same_basis(u.basis(), basis, "forward_coincidence");
    const Eigen::MatrixXcd m_out = evolve(m_in, u.matrix());
    double p = 0.0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        p += std::norm(product_projection(upper_bins[a], lower_bins[b], m_out));
    values.push_back(p);
  }
  return Interferogram(x_axis, std::move(values));
}

ReversedResult reversed_coincidence(
    const std::function<LinearOpticsUnitary(double)>& u_of_x,
    const std::vector<double>& x_axis, const std::vector<double>& tau_axis,
    const TwoPhotonState& pair_state) {
  check_axis(x_axis, "x_axis", "reversed_coincidence");
  check_axis(tau_axis, "tau_axis", "reversed_coincidence");
  const ModeBasis& basis = pair_state.basis();
  const std::size_t n = basis.n_modes();

  // Projection target of the reversed run: conj of the pair matrix, fixed.
  const Eigen::MatrixXcd m_pair_conj = embed_pair(pair_state).conjugate();

  std::vector<double> intensity(x_axis.size() * tau_axis.size());
  std::vector<double> tau_sums(x_axis.size(), 0.0);
  for (std::size_t xi = 0; xi < x_axis.size(); ++xi) {
    const LinearOpticsUnitary u = u_of_x(x_axis[xi]);
    check_same_basis(u.basis(), basis, "reversed_coincidence");
    const Eigen::MatrixXcd u_inv = u.matrix().adjoint();

    // Lower-arm wavepackets at the absolute click times, evolved backward;
    // independent of tau. Left-multiplied by the projection matrix once.
    std::vector<Eigen::VectorXcd> proj_beta(n);
    for (std::size_t b = 0; b < n; ++b) {
      const double t = static_cast<double>(b) * basis.time_step();
      proj_beta[b] = m_pair_conj * (u_inv * time_wavepacket(basis, t, true));
    }

    for (std::size_t ti = 0; ti < tau_axis.size(); ++ti) {
      const double tau = tau_axis[ti];
      double p = 0.0;
      // Sum over the absolute time: the click time carries no information,
      // only the relative delay tau does.
      for (std::size_t b = 0; b < n; ++b) {
        const double t = static_cast<double>(b) * basis.time_step();
        const Eigen::VectorXcd alpha =
            u_inv * time_wavepacket(basis, t + tau, false);
        // <pair| U^-1 |wp(t+tau), wp(t)> = 2 alpha^T conj(M_pair) beta
        const std::complex<double> amp =
            2.0 * (alpha.transpose() * proj_beta[b])(0, 0);
        p += std::norm(amp);
      }
      intensity[xi * tau_axis.size() + ti] = p;
      tau_sums[xi] += p;
    }
  }
  return ReversedResult{
      InterferogramMap(x_axis, tau_axis, std::move(intensity)),
      Interferogram(x_axis, std::move(tau_sums))};
}

Eigen::MatrixXcd random_unitary(std::size_t dim, std::mt19937_64& rng) {
  if (dim == 0) throw InvalidInput("random_unitary: dim must be positive");
  const auto d = static_cast<Eigen::Index>(dim);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      a(i, j) = std::complex<double>(re, im);
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  // Fix the R-diagonal phases so the distribution is Haar.
  for (Eigen::Index j = 0; j < d; ++j) {
    const std::complex<double> r = qr.matrixQR()(j, j);
    const double mag = std::abs(r);
    q.col(j) *= (mag > 0.0) ? (r / mag) : std::complex<double>(1.0, 0.0);
  }
  return q;
}

TwoPhotonState random_pair_state(const ModeBasis& basis, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(basis.n_modes());
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd amp(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      amp(j, k) = std::complex<double>(re, im);
    }
  return TwoPhotonState::normalized(basis, amp);
}

OracleReport run_oracle_suite(const OracleSuiteParams& p) {
  if (p.trials < 1) throw InvalidInput("oracle suite: trials must be >= 1");
  if (p.x_steps < 2) throw InvalidInput("oracle suite: x_steps must be >= 2");
  if (!(p.x_max_um > 0.0) || !std::isfinite(p.x_max_um))
    throw InvalidInput("oracle suite: x_max must be positive");
  if (!(p.sigma > 0.0) || !(p.delta_factor > 0.0))
    throw InvalidInput("oracle suite: sigma and delta_factor must be positive");
  const ModeBasis basis(p.n_modes, p.omega0, p.delta_factor * p.sigma);

  OracleReport report{};
  report.trials = p.trials;

  // Time-reversal identity on random instances.
  std::mt19937_64 rng(p.seed);
  report.identity_max_abs_dev = 0.0;
  for (std::size_t t = 0; t < p.trials; ++t) {
    const LinearOpticsUnitary u(basis, random_unitary(basis.dim(), rng));
    const TwoPhotonState si = random_pair_state(basis, rng);
    const TwoPhotonState sf = random_pair_state(basis, rng);
    const ReversalCheck chk = reversal_identity_check(u, si, sf);
    report.identity_max_abs_dev = std::max(
        report.identity_max_abs_dev, std::abs(chk.p_forward - chk.p_reversed));
  }

  // Forward coincidence dip vs tau-summed reversed detection, canonical bins.
  const TwoPhotonState pair = make_anticorrelated_state(
      basis, gaussian_pair_amplitudes(basis, p.sigma));
  const std::vector<double> x_axis =
      linspace(-p.x_max_um, p.x_max_um, p.x_steps);
  const auto u_plain = [&basis](double x) {
    return build_hom_unitary(basis, x, DispersionModel());
  };
  const Interferogram fwd = forward_coincidence(u_plain, x_axis, pair);
  const ReversedResult rev =
      reversed_coincidence(u_plain, x_axis, canonical_tau_bins(basis), pair);

  double peak = 0.0;
  for (double v : fwd.values()) peak = std::max(peak, v);
  if (!(peak > 0.0))
    throw NumericFailure("oracle suite: forward curve is identically zero");
  double max_dev = 0.0;
  for (std::size_t i = 0; i < x_axis.size(); ++i)
    max_dev =
        std::max(max_dev, std::abs(rev.tau_sum.values()[i] - fwd.values()[i]));
  report.fwdrev_max_rel_dev = max_dev / peak;
  report.fwdrev_pearson = pearson(fwd.values(), rev.tau_sum.values());

  // Even-order dispersion must leave the tau-summed reversed curve unchanged.
  const DispersionModel quad({0.0, 0.0, p.phi2_fs2}, p.omega0);
  const auto u_disp = [&basis, &quad](double x) {
    return build_hom_unitary(basis, x, quad);
  };
  const ReversedResult rev2 =
      reversed_coincidence(u_disp, x_axis, canonical_tau_bins(basis), pair);
  double max_disp_dev = 0.0;
  for (std::size_t i = 0; i < x_axis.size(); ++i)
    max_disp_dev = std::max(
        max_disp_dev,
        std::abs(rev2.tau_sum.values()[i] - rev.tau_sum.values()[i]));
  report.even_order_max_rel_dev = max_disp_dev / peak;

  report.passed = report.identity_max_abs_dev < 1e-10 &&
                  report.fwdrev_max_rel_dev < 1e-10 &&
                  report.fwdrev_pearson > 0.999999 &&
                  report.even_order_max_rel_dev < 1e-8;
  return report;
}

}  // namespace trhom
