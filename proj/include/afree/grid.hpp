#pragma once

#include <Eigen/Dense>
#include <vector>

#include "afree/errors.hpp"

namespace afree {

// Uniform periodic grid on [-L/2, L/2)^d with n points per axis, n a power
// of two. Point j maps to w_j = -L/2 + j h; the dual grid carries the
// frequencies k / L for k in [-n/2, n/2), stored in FFT wrap order.
struct Grid {
  int d = 0;
  int n = 0;
  double length = 0.0;

  Grid(int d, int n, double length) : d(d), n(n), length(length) {
    if (d < 1) throw Error("grid dimension must be positive");
    if (n < 2 || (n & (n - 1)) != 0) throw Error("grid resolution must be a power of two");
    if (length <= 0.0) throw Error("grid window must have positive length");
  }

  double h() const { return length / n; }
  double dxi() const { return 1.0 / length; }

  long size() const {
    long s = 1;
    for (int k = 0; k < d; ++k) s *= n;
    return s;
  }

  void unflatten(long flat, std::vector<int>& idx) const {
    idx.resize(d);
    for (int k = d - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(flat % n);
      flat /= n;
    }
  }

  Eigen::VectorXd point(const std::vector<int>& idx) const {
    Eigen::VectorXd w(d);
    for (int k = 0; k < d; ++k) w[k] = -0.5 * length + idx[k] * h();
    return w;
  }

  // Array index a holds frequency a/L for a < n/2 and (a - n)/L above.
  Eigen::VectorXd frequency(const std::vector<int>& idx) const {
    Eigen::VectorXd xi(d);
    for (int k = 0; k < d; ++k) {
      const int a = idx[k] < n / 2 ? idx[k] : idx[k] - n;
      xi[k] = a * dxi();
    }
    return xi;
  }

  bool has_nyquist(const std::vector<int>& idx) const {
    for (int k = 0; k < d; ++k)
      if (idx[k] == n / 2) return true;
    return false;
  }

  // (-1)^{sum of indices}; n is even so wrap order does not change parity.
  double parity(const std::vector<int>& idx) const {
    int s = 0;
    for (int k = 0; k < d; ++k) s += idx[k];
    return s % 2 == 0 ? 1.0 : -1.0;
  }
};

using ComplexField = std::vector<std::complex<double>>;

}  // namespace afree
