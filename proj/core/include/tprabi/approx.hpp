#pragma once
#include <stdexcept>
#include <utility>
#include <vector>

#include "tprabi/linalg.hpp"
#include "tprabi/model.hpp"

// Finite-order approximations to the spectrum: truncate the coupled ladder
// problem to a (N+1)-dimensional block around a chosen level index. Order N
// means dimension N+1 (order 0 keeps a single state).

namespace tprabi::approx {

struct NegativeDiscriminantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matrix of the truncated problem over ladder indices m..m+order:
//   A_ij = beta (2 (m+i+q-1/4) - v^2) delta_ij + parity * D_{m+i, m+j}.
// Its eigenvalues approximate energies near level m.
struct TruncatedProblem {
  Sector sector;
  int base_index = 0; // m
  int order = 0;      // N; matrix dimension is N+1
  linalg::DenseMatrix a;
  std::vector<double> eigenvalues; // ascending; empty until solve_truncated
};

TruncatedProblem make_truncated_problem(const ModelParams& params,
                                        const Sector& sector, int m, int order);

// Fill tp.eigenvalues from tp.a (ascending) with the general QR solver;
// imaginary parts beyond 1e-9 raise std::runtime_error.
void solve_truncated(TruncatedProblem& tp);

// Order 0: E = beta (2 (m+q-1/4) - v^2) + parity * D_mm.
double zeroth_order_energy(const ModelParams& params, const Sector& sector, int m);

// Order 1: the 2x2 block over {m, m+1} with the parity pinned to (-1)^m (the
// weak-coupling labeling of the excited doublets); returns (lower, upper).
// Throws NegativeDiscriminantError if the square root argument goes negative
// (cannot happen while the off-diagonal product D_{m,m+1} D_{m+1,m} stays a
// square, but the guard keeps the failure loud).
std::pair<double, double> first_order_energies(const ModelParams& params,
                                               Bargmann q, int m);

// Ground state at order 1, in closed form: lower root of the 2x2 at m = 0,
// q = 1/4, parity = -1 (not covered by first_order_energies, whose parity
// rule gives +1 at m = 0).
double ground_state_first_order(const ModelParams& params);

// Eigenvalues of the truncated problem, ascending. Convenience wrapper over
// make_truncated_problem + solve_truncated.
std::vector<double> diagonalize_truncated(const ModelParams& params,
                                          const Sector& sector, int m, int order);

// Ground-state estimate at order N: lowest eigenvalue of the truncated
// problem at m = 0, q = 1/4, parity = -1.
double ground_state_order(const ModelParams& params, int order);

} // namespace tprabi::approx
