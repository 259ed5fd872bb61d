#include "tprabi/melem.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tprabi::melem {

namespace {

// Upward recurrence in the degree, order k >= 0 fixed. s = sqrt(1 - x^2) is
// passed in so callers that know it exactly (here: s = 2g for x = beta)
// avoid the cancellation in 1 - x^2 near x = 1.
double legendre_positive_order(int degree, int k, double x, double s) {
  // seed: P_k^k = (-1)^k (2k-1)!! s^k
  double pkk = 1.0;
  for (int j = 1; j <= k; ++j) pkk *= -(2.0 * j - 1.0) * s;
  if (degree == k) return pkk;
  double pk1k = x * (2.0 * k + 1.0) * pkk; // P_{k+1}^k
  if (degree == k + 1) return pk1k;
  double pl = 0.0;
  for (int l = k + 2; l <= degree; ++l) {
    pl = (x * (2.0 * l - 1.0) * pk1k - (l + k - 1.0) * pkk) / (l - k);
    pkk = pk1k;
    pk1k = pl;
  }
  return pl;
}

double legendre_with_sine(int degree, int order, double x, double s) {
  if (degree < 0) throw std::invalid_argument("legendre_assoc: degree must be >= 0");
  if (!(std::fabs(x) < 1.0))
    throw std::domain_error("legendre_assoc: need |x| < 1");
  if (std::abs(order) > degree) return 0.0; // vanishes identically beyond the degree
  const int k = std::abs(order);
  double p = legendre_positive_order(degree, k, x, s);
  if (order < 0) {
    // P_l^{-k} = (-1)^k (l-k)!/(l+k)! P_l^k
    const double lnratio =
        linalg::log_factorial(degree - k) - linalg::log_factorial(degree + k);
    p *= std::exp(lnratio);
    if (k % 2 != 0) p = -p;
  }
  if (!std::isfinite(p))
    throw std::runtime_error("legendre_assoc: overflow (degree/order too large)");
  return p;
}

} // namespace

double legendre_assoc(int degree, int order, double x) {
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  return legendre_with_sine(degree, order, x, s);
}

double d_element(const ModelParams& params, Bargmann q, int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("d_element: indices must be >= 0");
  if (params.g == 0.0) {
    // frames coincide; the overlap is the identity (and beta = 1 sits on the
    // edge of the Legendre domain)
    if (m != n) return 0.0;
    return (m % 2 == 0 ? 0.5 : -0.5) * params.omega_qubit;
  }
  const BogoliubovFrame frame = make_frame(params);
  const int offset = photon_offset(q);
  const int degree = m + n + offset; // m + n + 2(q - 1/4)
  const int order = m - n;
  // sqrt of [2(n+q-1/4)]! / [2(m+q-1/4)]! via log-gamma; both arguments are
  // the integers 2n + offset and 2m + offset
  const double lnratio =
      linalg::log_factorial(2 * n + offset) - linalg::log_factorial(2 * m + offset);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  // sin of the Legendre argument is exactly 2g since beta^2 = 1 - 4g^2
  const double p = legendre_with_sine(degree, order, frame.beta, 2.0 * params.g);
  const double d = 0.5 * params.omega_qubit * sign * std::sqrt(frame.beta) *
                   std::exp(0.5 * lnratio) * p;
  if (!std::isfinite(d)) throw std::runtime_error("d_element: overflow");
  return d;
}

DMatrix build_dmatrix(const ModelParams& params, Bargmann q, int size) {
  if (size <= 0) throw std::invalid_argument("build_dmatrix: size must be positive");
  DMatrix out;
  out.q = q;
  out.size = size;
  out.omega_qubit = params.omega_qubit;
  out.g = params.g;
  out.d = linalg::DenseMatrix(size);
  for (int m = 0; m < size; ++m)
    for (int n = 0; n < size; ++n) out.d(m, n) = d_element(params, q, m, n);
  return out;
}

namespace {

// n_phot + sgn * g (a^+a^+ + aa) on Fock states {offset, offset+2, ...}
// up to photon number <= cutoff, as a dense symmetric matrix.
linalg::DenseMatrix photon_hamiltonian(const ModelParams& params, Bargmann q,
                                       int cutoff, double sgn) {
  const int offset = photon_offset(q);
  const int nb = (cutoff - offset) / 2 + 1;
  linalg::DenseMatrix h(nb);
  for (int i = 0; i < nb; ++i) {
    const double p = 2.0 * i + offset; // photon number
    h(i, i) = p;
    if (i + 1 < nb)
      h(i, i + 1) = h(i + 1, i) = sgn * params.g * std::sqrt((p + 1.0) * (p + 2.0));
  }
  return h;
}

// eigenvectors with sign fixed by the leading (lowest photon number)
// significant amplitude being positive
linalg::SymmetricEigen fixed_sign_eigen(linalg::DenseMatrix h) {
  auto eig = linalg::jacobi_symmetric_eigen(std::move(h), true);
  const int n = eig.vectors.n;
  for (int k = 0; k < n; ++k) {
    double amax = 0.0;
    for (int i = 0; i < n; ++i) amax = std::max(amax, std::fabs(eig.vectors(i, k)));
    for (int i = 0; i < n; ++i) {
      if (std::fabs(eig.vectors(i, k)) > 1e-7 * amax) {
        if (eig.vectors(i, k) < 0.0)
          for (int j = 0; j < n; ++j) eig.vectors(j, k) = -eig.vectors(j, k);
        break;
      }
    }
  }
  return eig;
}

double overlap_at_cutoff(const ModelParams& params, Bargmann q, int m, int n,
                         int cutoff) {
  const auto plus = fixed_sign_eigen(photon_hamiltonian(params, q, cutoff, +1.0));
  const auto minus = fixed_sign_eigen(photon_hamiltonian(params, q, cutoff, -1.0));
  const int nb = plus.vectors.n;
  if (m >= nb || n >= nb)
    throw std::invalid_argument("overlap_oracle: state index beyond cutoff basis");
  double s = 0.0;
  for (int j = 0; j < nb; ++j) s += plus.vectors(j, m) * minus.vectors(j, n);
  return 0.5 * params.omega_qubit * s;
}

} // namespace

double overlap_oracle(const ModelParams& params, Bargmann q, int m, int n,
                      int fock_cutoff) {
  if (m < 0 || n < 0)
    throw std::invalid_argument("overlap_oracle: indices must be >= 0");
  if (fock_cutoff < 2)
    throw std::invalid_argument("overlap_oracle: cutoff too small");
  const double d1 = overlap_at_cutoff(params, q, m, n, fock_cutoff);
  const double d2 = overlap_at_cutoff(params, q, m, n, 2 * fock_cutoff);
  if (std::fabs(d1 - d2) > 1e-9)
    throw NotConvergedError("overlap_oracle: doubling the cutoff moved the result");
  return d2;
}

} // namespace tprabi::melem
