// Independent reference implementations used only by the tests.  Everything
// here deliberately avoids the library's own algorithms: eigenvalues come
// from Eigen's dense solver, cycles from a naive path search, components from
// a reachability closure, and the endemic point from a damped fixed-point
// iteration.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double dense_radius(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  double rho = 0.0;
  for (int i = 0; i < m.rows(); ++i) rho = std::max(rho, std::abs(solver.eigenvalues()(i)));
  return rho;
}

inline double dense_abscissa(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  double s = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m.rows(); ++i) s = std::max(s, solver.eigenvalues()(i).real());
  return s;
}

// Characteristic polynomial coefficients c_0..c_n (monic, c_n = 1) of an
// n x n matrix via the Faddeev-LeVerrier recurrence.
inline std::vector<double> char_poly(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * Eigen::MatrixXd::Identity(n, n);
    c[n - k] = -(a * m).trace() / k;
  }
  return c;
}

// Routh-Hurwitz stability test on a monic polynomial with coefficients
// c_0..c_n (c_k multiplies lambda^k): all roots strictly in the open left
// half plane iff every first-column entry of the Routh array is positive.
inline bool routh_hurwitz_stable(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) throw std::invalid_argument("polynomial degree must be at least 1");
  // Rows are indexed by descending powers; build the first two rows from the
  // coefficients in descending order.
  std::vector<double> top, bottom;
  for (int k = n; k >= 0; k -= 2) top.push_back(c[k]);
  for (int k = n - 1; k >= 0; k -= 2) bottom.push_back(c[k]);
  if (top[0] <= 0.0) return false;
  for (int row = 0; row < n; ++row) {
    if (bottom.empty() || bottom[0] == 0.0) return false;
    if (bottom[0] < 0.0) return false;
    std::vector<double> next;
    const std::size_t width = std::max(top.size(), bottom.size() + 1);
    auto at = [](const std::vector<double>& v, std::size_t i) {
      return i < v.size() ? v[i] : 0.0;
    };
    for (std::size_t i = 0; i + 1 < width; ++i)
      next.push_back((bottom[0] * at(top, i + 1) - top[0] * at(bottom, i + 1)) / bottom[0]);
    next.push_back(0.0);
    while (next.size() > 1 && next.back() == 0.0) next.pop_back();
    top = bottom;
    bottom = next;
    if (top.size() <= 1 && bottom.size() <= 1) break;
  }
  return bottom.empty() || bottom[0] > 0.0;
}

// Naive simple-cycle enumeration: depth-first path extension from each start
// vertex, only visiting vertices larger than the start.
inline std::vector<std::vector<int>> brute_cycles(const Eigen::MatrixXd& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  std::vector<std::vector<int>> cycles;
  std::vector<int> path;
  std::vector<bool> used(n, false);

  std::function<void(int, int)> extend = [&](int start, int v) {
    for (int w = 0; w < n; ++w) {
      if (w == v || !(adjacency(w, v) > 0.0)) continue;
      if (w == start) {
        cycles.push_back(path);
      } else if (w > start && !used[w]) {
        used[w] = true;
        path.push_back(w);
        extend(start, w);
        path.pop_back();
        used[w] = false;
      }
    }
  };
  for (int s = 0; s < n; ++s) {
    used[s] = true;
    path = {s};
    extend(s, s);
    used[s] = false;
  }
  return cycles;
}

// Strongly connected components by boolean reachability closure.
inline std::vector<std::vector<int>> closure_components(const Eigen::MatrixXd& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int v = 0; v < n; ++v) {
    reach[v][v] = true;
    for (int w = 0; w < n; ++w)
      if (adjacency(w, v) > 0.0) reach[v][w] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;

  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> comps;
  for (int v = 0; v < n; ++v) {
    if (comp[v] >= 0) continue;
    std::vector<int> members;
    for (int w = v; w < n; ++w)
      if (comp[w] < 0 && reach[v][w] && reach[w][v]) {
        comp[w] = static_cast<int>(comps.size());
        members.push_back(w);
      }
    comps.push_back(members);
  }
  std::sort(comps.begin(), comps.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
  return comps;
}

// Damped fixed-point iteration for the endemic equilibrium of the
// uncontrolled system: x_i = (Bx)_i / (d_i + (Bx)_i), started from all-ones.
inline Eigen::VectorXd endemic_point(const Eigen::VectorXd& d, const Eigen::MatrixXd& b,
                                     int iterations = 200000, double damping = 0.5) {
  const int n = static_cast<int>(d.size());
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  for (int k = 0; k < iterations; ++k) {
    const Eigen::VectorXd w = b * x;
    Eigen::VectorXd next(n);
    for (int i = 0; i < n; ++i) next(i) = w(i) / (d(i) + w(i));
    const Eigen::VectorXd blended = damping * next + (1.0 - damping) * x;
    if ((blended - x).cwiseAbs().maxCoeff() < 1e-14) return blended;
    x = blended;
  }
  return x;
}

// Exact rational arithmetic, just enough for products and sums of a few
// small fractions.
struct Rational {
  long long num = 0, den = 1;

  static long long gcd(long long a, long long b) { return b == 0 ? a : gcd(b, a % b); }
  Rational reduced() const {
    const long long g = gcd(std::abs(num), std::abs(den));
    const long long sign = den < 0 ? -1 : 1;
    return {sign * num / g, sign * den / g};
  }
  Rational operator*(const Rational& o) const { return Rational{num * o.num, den * o.den}.reduced(); }
  Rational operator+(const Rational& o) const {
    return Rational{num * o.den + o.num * den, den * o.den}.reduced();
  }
  bool operator==(const Rational& o) const {
    const Rational a = reduced(), b = o.reduced();
    return a.num == b.num && a.den == b.den;
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

}  // namespace oracle
