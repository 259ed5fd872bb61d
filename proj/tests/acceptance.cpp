// End-to-end checks on the assembled library, one verdict line each
// ("ACCEPTANCE NN PASS|FAIL" plus the numbers behind it). Slower than the
// unit tests -- several lean on the Fock-space oracle at large cutoffs -- so
// they are registered as ten separate ctest entries and can be run one at a
// time with -tc="criterion NN*".
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <utility>
#include <vector>

#include "tprabi/approx.hpp"
#include "tprabi/gfunc.hpp"
#include "tprabi/linalg.hpp"
#include "tprabi/melem.hpp"
#include "tprabi/model.hpp"
#include "tprabi/oracle.hpp"
#include "tprabi/variational.hpp"

using namespace tprabi;
using linalg::DenseMatrix;

namespace {

bool report(int id, bool ok) {
  std::printf("ACCEPTANCE %02d %s\n", id, ok ? "PASS" : "FAIL");
  std::fflush(stdout);
  return ok;
}

// ground-state energy of the q = 1/4 sector Hamiltonian (the global ground
// state lives there), values only so large cutoffs stay affordable
double oracle_ground_state(const ModelParams& params, int fock_cutoff) {
  auto ham = oracle::build_hamiltonian(params, Bargmann::quarter, fock_cutoff);
  auto eig = linalg::jacobi_symmetric_eigen(std::move(ham.h), false);
  return eig.values.front();
}

// --- batched version of the overlap oracle -------------------------------
// Same construction as melem::overlap_oracle (photon-sector Hamiltonians
// n_phot +/- g (a^+a^+ + aa), eigenvector signs fixed by the leading
// significant amplitude), but one diagonalization pair serves a whole block
// of (m, n) instead of four solves per element.

linalg::SymmetricEigen squeezed_basis(const ModelParams& params, Bargmann q,
                                      int cutoff, double sgn) {
  const int offset = photon_offset(q);
  const int nb = (cutoff - offset) / 2 + 1;
  DenseMatrix h(nb);
  for (int i = 0; i < nb; ++i) {
    const double p = 2.0 * i + offset;
    h(i, i) = p;
    if (i + 1 < nb)
      h(i, i + 1) = h(i + 1, i) = sgn * params.g * std::sqrt((p + 1.0) * (p + 2.0));
  }
  auto eig = linalg::jacobi_symmetric_eigen(std::move(h), true);
  for (int k = 0; k < nb; ++k) {
    double amax = 0.0;
    for (int i = 0; i < nb; ++i) amax = std::max(amax, std::fabs(eig.vectors(i, k)));
    for (int i = 0; i < nb; ++i) {
      if (std::fabs(eig.vectors(i, k)) > 1e-7 * amax) {
        if (eig.vectors(i, k) < 0.0)
          for (int j = 0; j < nb; ++j) eig.vectors(j, k) = -eig.vectors(j, k);
        break;
      }
    }
  }
  return eig;
}

std::vector<std::vector<double>> overlap_block(const ModelParams& params, Bargmann q,
                                               int cutoff, int keep) {
  const auto plus = squeezed_basis(params, q, cutoff, +1.0);
  const auto minus = squeezed_basis(params, q, cutoff, -1.0);
  const int nb = plus.vectors.n;
  std::vector<std::vector<double>> out(keep, std::vector<double>(keep, 0.0));
  for (int m = 0; m < keep; ++m)
    for (int n = 0; n < keep; ++n) {
      double s = 0.0;
      for (int j = 0; j < nb; ++j) s += plus.vectors(j, m) * minus.vectors(j, n);
      out[m][n] = 0.5 * params.omega_qubit * s;
    }
  return out;
}

// --- randomized-matrix helpers (criterion 10) ----------------------------

double det_lu(DenseMatrix a) {
  const int n = a.n;
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(a(i, k)) > std::fabs(a(piv, k))) piv = i;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    if (a(k, k) == 0.0) return 0.0;
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

DenseMatrix random_symmetric(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = u(rng);
  return a;
}

DenseMatrix random_general(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = u(rng);
  return a;
}

DenseMatrix random_orthogonal(std::mt19937& rng, int n) {
  DenseMatrix q = random_general(rng, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += q(i, j) * q(i, k);
      for (int i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) q(i, j) /= norm;
  }
  return q;
}

DenseMatrix similarity(const DenseMatrix& q, const DenseMatrix& a) {
  const int n = a.n;
  DenseMatrix tmp(n), out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += a(i, k) * q(k, j);
      tmp(i, j) = s;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += q(k, i) * tmp(k, j);
      out(i, j) = s;
    }
  return out;
}

} // namespace

TEST_CASE("criterion 01 series zeros match the oracle spectrum one-to-one") {
  // every zero of G in [-2, 6] pairs with a converged oracle level of the
  // same sector within 1e-6, no leftovers on either side
  const double e_lo = -2.0, e_hi = 6.0;
  const double edge = 1e-5; // guard: drop both sides this close to a window edge
  bool ok = true;
  int matched = 0;
  double worst_all = 0.0;
  for (double omega : {1.0, 3.0}) {
    for (double g : {0.1, 0.25, 0.45}) {
      const ModelParams p(omega, g);
      for (Bargmann q : {Bargmann::quarter, Bargmann::three_quarter}) {
        const auto spectrum = oracle::converged_spectrum(p, q, 24, 250);
        for (Parity parity : {Parity::plus, Parity::minus}) {
          const Sector sector{q, parity};
          const auto scan = gfunc::find_zeros_in_interval(p, sector, e_lo, e_hi);
          std::vector<double> zeros;
          for (const auto& z : scan.zeros)
            if (z.energy > e_lo + edge && z.energy < e_hi - edge)
              zeros.push_back(z.energy);
          std::vector<double> reference;
          bool settled = true;
          for (const auto& lvl : spectrum) {
            if (lvl.parity != parity_sign(parity)) continue;
            if (lvl.energy <= e_lo + edge || lvl.energy >= e_hi - edge) continue;
            if (lvl.doubling_delta > 1e-7) settled = false;
            reference.push_back(lvl.energy);
          }
          bool here = settled && zeros.size() == reference.size();
          double worst = 0.0;
          if (here)
            for (size_t i = 0; i < zeros.size(); ++i)
              worst = std::max(worst, std::fabs(zeros[i] - reference[i]));
          here = here && worst < 1e-6;
          if (!here) {
            std::printf("  omega=%g g=%g q=%s parity=%+d: %zu zeros vs %zu oracle "
                        "levels, worst |dE|=%.3e%s\n",
                        omega, g, to_string(q).c_str(), parity_sign(parity),
                        zeros.size(), reference.size(), worst,
                        settled ? "" : " (oracle not settled)");
            for (double z : zeros) std::printf("    zero   %.9f\n", z);
            for (double r : reference) std::printf("    oracle %.9f\n", r);
          }
          matched += static_cast<int>(zeros.size());
          worst_all = std::max(worst_all, worst);
          ok = ok && here;
        }
      }
    }
  }
  std::printf("  24 sector tables, %d levels paired, worst |dE| = %.3e (bound 1e-6)\n",
              matched, worst_all);
  CHECK(report(1, ok));
}

TEST_CASE("criterion 02 weak coupling reproduces the decoupled ladder") {
  // g = 1e-4: the lowest eight zeros per sector against the g = 0 energies
  const ModelParams p(1.0, 1e-4);
  bool ok = true;
  double worst_all = 0.0;
  for (const Sector& sector : all_sectors()) {
    const auto expected = decoupled_levels(p, sector, 7);
    const auto scan = gfunc::find_zeros_in_interval(p, sector, -2.0, 16.2);
    bool here = scan.zeros.size() >= expected.size();
    double worst = 0.0;
    if (here)
      for (size_t i = 0; i < expected.size(); ++i)
        worst = std::max(worst, std::fabs(scan.zeros[i].energy - expected[i]));
    here = here && worst < 5e-3;
    if (!here)
      std::printf("  q=%s parity=%+d: %zu zeros (need >= 8), worst |dE|=%.3e\n",
                  to_string(sector.q).c_str(), parity_sign(sector.parity),
                  scan.zeros.size(), worst);
    worst_all = std::max(worst_all, worst);
    ok = ok && here;
  }
  std::printf("  worst shift from the decoupled ladder: %.3e (bound 5e-3)\n",
              worst_all);
  CHECK(report(2, ok));
}

TEST_CASE("criterion 03 ladder levels compress toward -1/2 near collapse") {
  // (q=1/4, parity=+1), pole intervals n = 1..5: the distance |E+1/2| of the
  // interval's level should shrink along g = 0.40, 0.45, 0.49 and end below
  // 3 beta. Two structural obstructions, both visible in the table:
  //   - intervals do not hold exactly one level at every g (levels drift
  //     upward in x and cross poles as g grows; at 0.40 interval 4 is empty,
  //     at 0.49 it holds two). Where an interval has several we take the
  //     zero closest to -1/2; an empty interval fails that n.
  //   - the interval-n level sits above the pole at 2 beta (n - 3/4) - 1/2,
  //     so |E+1/2| >= 2 beta (n - 3/4): the 3 beta window cannot hold any
  //     interval past n = 2, however close to collapse.
  // The compression itself (each column shrinking with g, ratio to beta
  // bounded) is real and is what the scan shows.
  const Sector sector{Bargmann::quarter, Parity::plus};
  const std::vector<double> gs = {0.40, 0.45, 0.49};
  double m[3][6] = {};
  int found[3][6] = {};
  bool ok = true;
  for (size_t gi = 0; gi < gs.size(); ++gi) {
    const ModelParams p(1.0, gs[gi]);
    const auto frame = make_frame(p);
    const double lo = pole_energy(frame, sector, 0) - 0.5;
    const double hi = pole_energy(frame, sector, 5) - 1e-9;
    const auto scan = gfunc::find_zeros_in_interval(p, sector, lo, hi, 128);
    for (const auto& z : scan.zeros)
      if (z.pole_interval >= 1 && z.pole_interval <= 5) {
        const int n = z.pole_interval;
        const double dist = std::fabs(z.energy + 0.5);
        if (found[gi][n] == 0 || dist < m[gi][n]) m[gi][n] = dist;
        ++found[gi][n];
      }
  }
  const double beta_end = make_frame(ModelParams(1.0, gs.back())).beta;
  std::printf("  interval    |E+1/2| @0.40    @0.45      @0.49     /beta(0.49)"
              "   3*beta(0.49)=%.5f\n",
              3.0 * beta_end);
  for (int n = 1; n <= 5; ++n) {
    std::printf("  %8d    ", n);
    for (int gi = 0; gi < 3; ++gi) {
      if (found[gi][n])
        std::printf("%9.5f%s ", m[gi][n], found[gi][n] > 1 ? "*" : " ");
      else
        std::printf("%9s  ", "-");
    }
    if (found[2][n])
      std::printf("  %8.3f", m[2][n] / beta_end);
    std::printf("\n");
    const bool present = found[0][n] && found[1][n] && found[2][n];
    const bool mono = present && m[0][n] > m[1][n] && m[1][n] > m[2][n];
    const bool bound = present && m[2][n] < 3.0 * beta_end;
    ok = ok && mono && bound;
  }
  std::printf("  (* interval holds more than one zero; closest to -1/2 kept)\n");
  CHECK(report(3, ok));
}

TEST_CASE("criterion 04 oracle ground state stays below -1/2 at g = 0.499") {
  // double the Fock cutoff until the energy moves < 1e-6, then check the
  // margin below -1/2 is positive and survives one more doubling to +-10%
  const ModelParams p(1.0, 0.499);
  int cutoff = 100;
  double e = oracle_ground_state(p, cutoff);
  bool settled = false;
  while (!settled && cutoff < 800) {
    const double refined = oracle_ground_state(p, 2 * cutoff);
    settled = std::fabs(refined - e) < 1e-6;
    e = refined;
    cutoff *= 2;
  }
  bool ok = settled;
  const double margin = -0.5 - e;
  if (settled) {
    const double margin2 = -0.5 - oracle_ground_state(p, 2 * cutoff);
    ok = margin > 0.0 && std::fabs(margin2 - margin) <= 0.10 * margin;
    std::printf("  E0 = %.12f (cutoff %d), margin below -1/2 = %.9f, "
                "after doubling %.9f\n",
                e, cutoff, margin, margin2);
  } else {
    std::printf("  no convergence by cutoff %d (last E0 = %.12f)\n", cutoff, e);
  }
  CHECK(report(4, ok));
}

TEST_CASE("criterion 05 truncated ground states head to -1/2, the oracle does not") {
  // |E_N + 1/2| along g = 0.49, 0.499, 0.4999 for orders 0, 1, 4, 8: the
  // sequence shrinks, but it rides the (omega/2) sqrt(beta) coupling scale,
  // which is still 0.06..0.15 at g = 0.4999 -- far off the 0.02 target.
  // The oracle margin, meanwhile, must not shrink toward zero at all.
  const double gs[3] = {0.49, 0.499, 0.4999};
  bool ok = true;
  std::printf("  order    |E+1/2| @0.49    @0.499    @0.4999\n");
  for (int order : {0, 1, 4, 8}) {
    double m[3];
    for (int i = 0; i < 3; ++i)
      m[i] = std::fabs(approx::ground_state_order(ModelParams(1.0, gs[i]), order) + 0.5);
    std::printf("  %5d    %14.6f  %.6f  %.6f\n", order, m[0], m[1], m[2]);
    const bool mono = m[0] > m[1] && m[1] > m[2];
    const bool small = m[2] < 0.02;
    ok = ok && mono && small;
  }
  const double oracle_margin =
      -0.5 - oracle_ground_state(ModelParams(1.0, 0.4999), 600);
  std::printf("  oracle margin below -1/2 at g=0.4999: %.6f (must stay > 0.02)\n",
              oracle_margin);
  ok = ok && oracle_margin > 0.02;
  CHECK(report(5, ok));
}

TEST_CASE("criterion 06 variational energy sits between oracle and first order") {
  bool ok = true;
  for (double g : {0.1, 0.2, 0.3, 0.4, 0.45, 0.49}) {
    const ModelParams p(1.0, g);
    const double lower =
        oracle::converged_spectrum(p, Bargmann::quarter, 1, 200).front().energy;
    const auto var = variational::minimize_variational(p);
    const double upper = approx::ground_state_first_order(p);
    const bool here = var.converged && lower - 1e-9 <= var.energy &&
                      var.energy <= upper + 1e-9;
    std::printf("  g=%.2f: oracle %.9f <= var %.9f <= first order %.9f %s\n", g,
                lower, var.energy, upper, here ? "" : " VIOLATED");
    ok = ok && here;
  }
  const auto close = variational::minimize_variational(ModelParams(1.0, 0.4999));
  std::printf("  var(0.4999) = %.9f (must be < -1/2)\n", close.energy);
  ok = ok && close.energy < -0.5;
  CHECK(report(6, ok));
}

TEST_CASE("criterion 07 closed-form couplings match the Fock overlap oracle") {
  // D_mn from the Legendre closed form against the squeezed-basis overlaps,
  // 6x6 block, both sectors, three couplings; the one-element library
  // routine is spot-checked against the batch
  bool ok = true;
  double worst = 0.0;
  for (double g : {0.1, 0.3, 0.45}) {
    const ModelParams p(1.0, g);
    for (Bargmann q : {Bargmann::quarter, Bargmann::three_quarter}) {
      const auto coarse = overlap_block(p, q, 200, 6);
      const auto fine = overlap_block(p, q, 400, 6);
      double drift = 0.0, dev = 0.0;
      for (int m = 0; m < 6; ++m)
        for (int n = 0; n < 6; ++n) {
          drift = std::max(drift, std::fabs(coarse[m][n] - fine[m][n]));
          dev = std::max(dev, std::fabs(fine[m][n] - melem::d_element(p, q, m, n)));
        }
      const double spot = melem::overlap_oracle(p, q, 2, 4, 200);
      const double spot_dev = std::fabs(spot - fine[2][4]);
      if (drift > 1e-9 || dev >= 1e-8 || spot_dev > 1e-12)
        std::printf("  g=%g q=%s: max |D - overlap| = %.3e, cutoff drift %.3e, "
                    "spot delta %.3e\n",
                    g, to_string(q).c_str(), dev, drift, spot_dev);
      ok = ok && drift <= 1e-9 && dev < 1e-8 && spot_dev <= 1e-12;
      worst = std::max(worst, dev);
    }
  }
  std::printf("  worst |D_mn - overlap| over the grid: %.3e (bound 1e-8)\n", worst);
  CHECK(report(7, ok));
}

TEST_CASE("criterion 08 closed-form low orders match the general truncated solver") {
  bool ok = true;
  double worst = 0.0;
  for (double omega : {1.0, 3.0}) {
    for (double g : {0.1, 0.25, 0.45}) {
      const ModelParams p(omega, g);
      for (Bargmann q : {Bargmann::quarter, Bargmann::three_quarter}) {
        for (int m = 0; m < 5; ++m) {
          for (Parity parity : {Parity::plus, Parity::minus}) {
            const Sector sector{q, parity};
            const double direct =
                approx::diagonalize_truncated(p, sector, m, 0).front();
            worst = std::max(
                worst, std::fabs(approx::zeroth_order_energy(p, sector, m) - direct));
          }
          const Sector doublet{q, m % 2 == 0 ? Parity::plus : Parity::minus};
          const auto closed = approx::first_order_energies(p, q, m);
          const auto ref = approx::diagonalize_truncated(p, doublet, m, 1);
          worst = std::max(worst, std::fabs(closed.first - ref[0]));
          worst = std::max(worst, std::fabs(closed.second - ref[1]));
        }
      }
      const double gs_closed = approx::ground_state_first_order(p);
      const double gs_direct =
          approx::diagonalize_truncated(p, {Bargmann::quarter, Parity::minus}, 0, 1)
              .front();
      worst = std::max(worst, std::fabs(gs_closed - gs_direct));
    }
  }
  ok = worst < 1e-10;
  std::printf("  worst closed form vs solver deviation: %.3e (bound 1e-10)\n", worst);
  CHECK(report(8, ok));
}

TEST_CASE("criterion 09 a positive-parity level dives below the baseline at omega = 3") {
  // sweep g and look for a positive-parity zero below the n = 0 pole; once
  // it crosses, it has to stay below for the rest of the ladder
  const std::vector<double> gs = {0.30, 0.35, 0.40, 0.45, 0.47, 0.49, 0.499};
  bool ok = false;
  for (Bargmann q : {Bargmann::quarter, Bargmann::three_quarter}) {
    const Sector sector{q, Parity::plus};
    std::vector<int> crossed(gs.size(), 0);
    std::vector<double> witness(gs.size(), 0.0);
    for (size_t i = 0; i < gs.size(); ++i) {
      const ModelParams p(3.0, gs[i]);
      const auto frame = make_frame(p);
      const double floor_e = first_baseline(frame, sector);
      const auto scan = gfunc::find_zeros_in_interval(p, sector, -3.5,
                                                      floor_e - 1e-9, 64, 1e-10,
                                                      1e-12, 2000);
      if (!scan.zeros.empty()) {
        crossed[i] = 1;
        witness[i] = scan.zeros.front().energy;
      }
    }
    size_t g0 = gs.size();
    for (size_t i = 0; i < gs.size(); ++i)
      if (crossed[i]) {
        g0 = i;
        break;
      }
    bool persistent = g0 < gs.size();
    for (size_t i = g0; i < gs.size(); ++i) persistent = persistent && crossed[i];
    std::printf("  q=%s:", to_string(q).c_str());
    for (size_t i = 0; i < gs.size(); ++i)
      std::printf(" %g:%s", gs[i], crossed[i] ? "below" : "-");
    if (persistent)
      std::printf("   crossed at g0=%g (E=%.6f there)", gs[g0], witness[g0]);
    std::printf("\n");
    ok = ok || persistent;
  }
  CHECK(report(9, ok));
}

TEST_CASE("criterion 10 eigensolver trace, determinant, similarity invariants") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> dim(2, 12);
  bool ok = true;
  double worst_trace = 0.0, worst_det = 0.0, worst_sim = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = dim(rng);
    if (trial % 2 == 0) {
      DenseMatrix a = random_symmetric(rng, n);
      const auto eig = linalg::jacobi_symmetric_eigen(a, false);
      double tr = 0.0, sum = 0.0, prod = 1.0;
      for (int i = 0; i < n; ++i) tr += a(i, i);
      for (double v : eig.values) {
        sum += v;
        prod *= v;
      }
      const double det = det_lu(a);
      const double terr = std::fabs(sum - tr) / std::max(1.0, std::fabs(tr));
      const double derr = std::fabs(prod - det) / std::max(1.0, std::fabs(det));
      ok = ok && terr <= 1e-8 && derr <= 1e-8;
      worst_trace = std::max(worst_trace, terr);
      worst_det = std::max(worst_det, derr);
      DenseMatrix qm = random_orthogonal(rng, n);
      const auto eig2 = linalg::jacobi_symmetric_eigen(similarity(qm, a), false);
      for (int i = 0; i < n; ++i) {
        const double serr = std::fabs(eig2.values[i] - eig.values[i]);
        ok = ok && serr < 1e-9;
        worst_sim = std::max(worst_sim, serr);
      }
    } else {
      DenseMatrix a = random_general(rng, n);
      const auto ev = linalg::qr_nonsymmetric_eigen(a);
      double tr = 0.0;
      std::complex<double> sum = 0.0, prod = 1.0;
      for (int i = 0; i < n; ++i) tr += a(i, i);
      for (auto z : ev) {
        sum += z;
        prod *= z;
      }
      const double det = det_lu(a);
      const double terr = std::fabs(sum.real() - tr) / std::max(1.0, std::fabs(tr));
      const double derr = std::abs(prod - det) / std::max(1.0, std::fabs(det));
      ok = ok && terr <= 1e-8 && std::fabs(sum.imag()) <= 1e-8 && derr <= 1e-8;
      worst_trace = std::max(worst_trace, terr);
      worst_det = std::max(worst_det, derr);
      DenseMatrix qm = random_orthogonal(rng, n);
      const auto ev2 = linalg::qr_nonsymmetric_eigen(similarity(qm, a));
      for (int i = 0; i < n; ++i) {
        const double serr = std::abs(ev2[i] - ev[i]);
        ok = ok && serr < 1e-8;
        worst_sim = std::max(worst_sim, serr);
      }
    }
  }
  std::printf("  100 trials, dims 2..12: worst trace %.3e, det %.3e, "
              "similarity %.3e\n",
              worst_trace, worst_det, worst_sim);
  CHECK(report(10, ok));
}
