#pragma once
#include <utility>

#include "tprabi/model.hpp"

// Squeezed-state upper bound on the ground-state energy. The trial state is
// a squeezed vacuum times the qubit state that minimizes the cross term; the
// resulting energy is
//   E(r) = -(omega/2) (1 - tanh^2 2r)^{1/4} + sinh^2 r - g sinh 2r.
// E'(0) = -2g, so any g > 0 pulls the minimum to r > 0, and E(r) -> +inf as
// r -> inf for g < 1/2.

namespace tprabi::variational {

// The trial energy itself. No parameter validation: callers probe the
// collapse point g = 1/2 and beyond with this.
double trial_energy(double omega, double g, double r);

double variational_energy(const ModelParams& params, double r);

struct VariationalResult {
  double r_opt = 0.0;
  double energy = 0.0;
  int iterations = 0;     // golden-section shrink steps, all starts combined
  bool converged = false; // finite-difference dE/dr at r_opt came out < 1e-8
  bool boundary = false;  // a run hit the expansion cap still heading downhill
};

// Multi-start minimization of E(r) over r >= 0. Each start in
// {0, 0.5, 1, 2, 4} (clipped into r_bracket) marches downhill with doubling
// steps -- past the bracket if E keeps falling -- until the function turns
// up, then golden section refines the well to width tol. E(r) flattens badly
// as g -> 1/2, which is what the multiple starts guard against. The winner
// is cross-checked by a central-difference derivative; a run that never
// turned uphill reports the edge value with the boundary flag instead of
// throwing.
VariationalResult minimize_variational(const ModelParams& params,
                                       std::pair<double, double> r_bracket = {0.0,
                                                                              4.0},
                                       double tol = 1e-10);

} // namespace tprabi::variational
