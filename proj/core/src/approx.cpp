#include "tprabi/approx.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tprabi/melem.hpp"

namespace tprabi::approx {

namespace {

double diagonal_term(const BogoliubovFrame& frame, Bargmann q, int n) {
  const double v2 = frame.v * frame.v;
  return frame.beta * (2.0 * (n + q_value(q) - 0.25) - v2);
}

} // namespace

TruncatedProblem make_truncated_problem(const ModelParams& params,
                                        const Sector& sector, int m, int order) {
  if (m < 0) throw std::invalid_argument("make_truncated_problem: m must be >= 0");
  if (order < 0)
    throw std::invalid_argument("make_truncated_problem: order must be >= 0");
  const BogoliubovFrame frame = make_frame(params);
  const int dim = order + 1;
  const double pi = parity_sign(sector.parity);

  TruncatedProblem out;
  out.sector = sector;
  out.base_index = m;
  out.order = order;
  out.a = linalg::DenseMatrix(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      double aij = pi * melem::d_element(params, sector.q, m + i, m + j);
      if (i == j) aij += diagonal_term(frame, sector.q, m + i);
      out.a(i, j) = aij;
    }
  }
  return out;
}

double zeroth_order_energy(const ModelParams& params, const Sector& sector, int m) {
  if (m < 0) throw std::invalid_argument("zeroth_order_energy: m must be >= 0");
  const BogoliubovFrame frame = make_frame(params);
  return diagonal_term(frame, sector.q, m) +
         parity_sign(sector.parity) * melem::d_element(params, sector.q, m, m);
}

void solve_truncated(TruncatedProblem& tp) {
  auto ev = linalg::qr_nonsymmetric_eigen(tp.a);
  tp.eigenvalues.clear();
  tp.eigenvalues.reserve(ev.size());
  for (const auto& z : ev) {
    if (std::fabs(z.imag()) > 1e-9)
      throw std::runtime_error(
          "solve_truncated: complex eigenvalue from a real spectrum");
    tp.eigenvalues.push_back(z.real());
  }
  std::sort(tp.eigenvalues.begin(), tp.eigenvalues.end());
}

namespace {

std::pair<double, double> two_by_two_roots(const TruncatedProblem& tp,
                                           const char* who) {
  const double a00 = tp.a(0, 0), a11 = tp.a(1, 1);
  const double mean = 0.5 * (a00 + a11);
  const double half_gap = 0.5 * (a00 - a11);
  const double disc = half_gap * half_gap + tp.a(0, 1) * tp.a(1, 0);
  if (disc < 0.0)
    throw NegativeDiscriminantError(std::string(who) +
                                    ": negative discriminant in the 2x2 block");
  const double root = std::sqrt(disc);
  return {mean - root, mean + root};
}

} // namespace

std::pair<double, double> first_order_energies(const ModelParams& params,
                                               Bargmann q, int m) {
  const Parity pi = (m % 2 == 0) ? Parity::plus : Parity::minus;
  const TruncatedProblem tp = make_truncated_problem(params, {q, pi}, m, 1);
  return two_by_two_roots(tp, "first_order_energies");
}

double ground_state_first_order(const ModelParams& params) {
  const Sector gs{Bargmann::quarter, Parity::minus};
  return two_by_two_roots(make_truncated_problem(params, gs, 0, 1),
                          "ground_state_first_order")
      .first;
}

std::vector<double> diagonalize_truncated(const ModelParams& params,
                                          const Sector& sector, int m, int order) {
  TruncatedProblem tp = make_truncated_problem(params, sector, m, order);
  solve_truncated(tp);
  return tp.eigenvalues;
}

double ground_state_order(const ModelParams& params, int order) {
  const Sector gs{Bargmann::quarter, Parity::minus};
  return diagonalize_truncated(params, gs, 0, order).front();
}

} // namespace tprabi::approx
