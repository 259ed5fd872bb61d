#include "tprabi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tprabi::linalg {

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.n; ++i)
    for (int j = i + 1; j < a.n; ++j) s += a(i, j) * a(i, j);
  return std::sqrt(2.0 * s);
}

double frobenius_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (double x : a.a) s += x * x;
  return std::sqrt(s);
}

} // namespace

SymmetricEigen jacobi_symmetric_eigen(DenseMatrix a, bool want_vectors) {
  const int n = a.n;
  if (n <= 0) throw std::invalid_argument("jacobi_symmetric_eigen: empty matrix");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::fabs(a(i, j) - a(j, i)) > 1e-12)
        throw std::invalid_argument("jacobi_symmetric_eigen: matrix not symmetric");

  DenseMatrix v;
  if (want_vectors) {
    v = DenseMatrix(n);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;
  }

  const double anorm = frobenius_norm(a);
  const double stop = 1e-12 * anorm;
  constexpr int max_sweeps = 60;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= stop) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
        // smaller-magnitude root of t^2 + 2*theta*t - 1 = 0; guard huge theta
        double t;
        if (std::fabs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(p, i) = a(i, p);
          a(i, q) = s * aip + c * aiq;
          a(q, i) = a(i, q);
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        if (want_vectors) {
          for (int i = 0; i < n; ++i) {
            const double vip = v(i, p), viq = v(i, q);
            v(i, p) = c * vip - s * viq;
            v(i, q) = s * vip + c * viq;
          }
        }
      }
    }
  }
  if (sweep == max_sweeps && off_diagonal_norm(a) > stop)
    throw std::runtime_error("jacobi_symmetric_eigen: sweep cap reached without convergence");

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&a](int i, int j) { return a(i, i) < a(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  for (int k = 0; k < n; ++k) out.values[k] = a(order[k], order[k]);
  if (want_vectors) {
    out.vectors = DenseMatrix(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

namespace {

// Osborne balancing (radix 2): similarity scaling that roughly equalizes
// row and column norms. Leaves eigenvalues unchanged.
void balance_in_place(DenseMatrix& a) {
  const int n = a.n;
  constexpr double radix = 2.0, sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) {
          c += std::fabs(a(j, i));
          r += std::fabs(a(i, j));
        }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double ginv = 1.0 / f;
        for (int j = 0; j < n; ++j) a(i, j) *= ginv;
        for (int j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form (in place; the lower
// triangle beyond the first subdiagonal is zeroed).
void hessenberg_in_place(DenseMatrix& a) {
  const int n = a.n;
  std::vector<double> w(n, 0.0);
  for (int m = 1; m < n - 1; ++m) {
    double scale = 0.0;
    for (int i = m; i < n; ++i) scale += std::fabs(a(i, m - 1));
    if (scale == 0.0) continue;

    double h = 0.0;
    for (int i = m; i < n; ++i) {
      w[i] = a(i, m - 1) / scale;
      h += w[i] * w[i];
    }
    const double f = w[m];
    const double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
    h -= f * g; // = |u|^2 / 2 for u = w - g*e_m
    w[m] = f - g;

    for (int j = 0; j < n; ++j) { // apply reflector from the left
      double s = 0.0;
      for (int i = m; i < n; ++i) s += w[i] * a(i, j);
      s /= h;
      for (int i = m; i < n; ++i) a(i, j) -= s * w[i];
    }
    for (int i = 0; i < n; ++i) { // and from the right
      double s = 0.0;
      for (int j = m; j < n; ++j) s += a(i, j) * w[j];
      s /= h;
      for (int j = m; j < n; ++j) a(i, j) -= s * w[j];
    }
    a(m, m - 1) = scale * g;
    for (int i = m + 1; i < n; ++i) a(i, m - 1) = 0.0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
// Classic EISPACK hqr flow with exceptional shifts at iterations 10 and 20.
std::vector<std::complex<double>> hqr_eigenvalues(DenseMatrix& a) {
  const int n = a.n;
  std::vector<std::complex<double>> ev;
  ev.reserve(n);

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::fabs(a(i, j));
  if (anorm == 0.0) anorm = 1.0;

  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l;
    do {
      for (l = nn; l >= 1; --l) {
        double s = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::fabs(a(l, l - 1)) + s == s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) { // isolated real eigenvalue
        ev.emplace_back(x + t, 0.0);
        --nn;
      } else {
        double y = a(nn - 1, nn - 1);
        double w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) { // trailing 2x2 block
          double p = 0.5 * (y - x);
          double q = p * p + w;
          double z = std::sqrt(std::fabs(q));
          x += t;
          if (q >= 0.0) {
            z = p + ((p >= 0.0) ? z : -z);
            ev.emplace_back(x + z, 0.0);
            ev.emplace_back((z != 0.0) ? x - w / z : x + z, 0.0);
          } else {
            ev.emplace_back(x + p, z);
            ev.emplace_back(x + p, -z);
          }
          nn -= 2;
        } else {
          if (its == 30)
            throw std::runtime_error("qr_nonsymmetric_eigen: QR iteration cap reached");
          if (its == 10 || its == 20) { // exceptional shift
            t += x;
            for (int i = 0; i <= nn; ++i) a(i, i) -= x;
            double s = std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;

          int m;
          double p = 0.0, q = 0.0, r = 0.0;
          for (m = nn - 2; m >= l; --m) {
            const double z = a(m, m);
            const double rr = x - z;
            const double ss = y - z;
            p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - rr - ss;
            r = a(m + 2, m + 1);
            const double s = std::fabs(p) + std::fabs(q) + std::fabs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::fabs(a(m, m - 1)) * (std::fabs(q) + std::fabs(r));
            const double v = std::fabs(p) *
                (std::fabs(a(m - 1, m - 1)) + std::fabs(z) + std::fabs(a(m + 1, m + 1)));
            if (u + v == v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) a(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = (k != nn - 1) ? a(k + 2, k - 1) : 0.0;
              x = std::fabs(p) + std::fabs(q) + std::fabs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            double s = std::sqrt(p * p + q * q + r * r);
            if (p < 0.0) s = -s;
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) a(k, k - 1) = -a(k, k - 1);
            } else {
              a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            double z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) { // row transform
              double pp = a(k, j) + q * a(k + 1, j);
              if (k != nn - 1) {
                pp += r * a(k + 2, j);
                a(k + 2, j) -= pp * z;
              }
              a(k + 1, j) -= pp * y;
              a(k, j) -= pp * x;
            }
            const int mmin = std::min(nn, k + 3);
            for (int i = l; i <= mmin; ++i) { // column transform
              double pp = x * a(i, k) + y * a(i, k + 1);
              if (k != nn - 1) {
                pp += z * a(i, k + 2);
                a(i, k + 2) -= pp * r;
              }
              a(i, k + 1) -= pp * q;
              a(i, k) -= pp;
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  return ev;
}

} // namespace

std::vector<std::complex<double>> qr_nonsymmetric_eigen(DenseMatrix a) {
  if (a.n <= 0) throw std::invalid_argument("qr_nonsymmetric_eigen: empty matrix");
  if (a.n == 1) return {std::complex<double>(a(0, 0), 0.0)};
  balance_in_place(a);
  hessenberg_in_place(a);
  auto ev = hqr_eigenvalues(a);
  std::sort(ev.begin(), ev.end(), [](const auto& lhs, const auto& rhs) {
    if (lhs.real() != rhs.real()) return lhs.real() < rhs.real();
    return lhs.imag() < rhs.imag();
  });
  return ev;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("log_gamma: requires x > 0");
  // Lanczos, g = 7, 9 coefficients; relative error < 1e-14 on (0, inf)
  static constexpr double coef[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // reflection keeps the small-argument range accurate
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
           log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double ag = coef[0];
  for (int i = 1; i < 9; ++i) ag += coef[i] / (z + i);
  const double tt = z + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(tt) - tt +
         std::log(ag);
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  return log_gamma(static_cast<double>(n) + 1.0);
}

} // namespace tprabi::linalg
