#pragma once

#include <cmath>
#include <vector>

#include "afree/errors.hpp"

namespace afree {

// The standard mollifier profile rho(t) = c exp(-1/(1-t^2)) on (-1,1), zero
// outside, with c chosen so the mass is 1. Derivatives follow the closed
// recurrence rho^(k) = rho * N_k(t) / (1-t^2)^{2k} with polynomial N_k:
//   N_{k+1} = -2t N_k + (1-t^2)^2 N_k' + 4kt(1-t^2) N_k.
class Bump1D {
 public:
  static constexpr double kNorm = 2.252283621043581;  // 1 / integral of exp(-1/(1-t^2))

  explicit Bump1D(int max_order = 8) { grow(max_order); }

  double value(double t) const { return derivative(0, t); }

  double derivative(int k, double t) const {
    if (k >= static_cast<int>(nk_.size())) throw Error("bump derivative order not tabulated");
    const double s = 1.0 - t * t;
    // Below this margin the exponential factor is under 1e-260 and the
    // rational prefactor cannot bring the product anywhere near tolerance.
    if (s < 1.0 / 600.0) return 0.0;
    double nk = 0.0;
    for (auto it = nk_[k].rbegin(); it != nk_[k].rend(); ++it) nk = nk * t + *it;
    return kNorm * std::exp(-1.0 / s) * nk / std::pow(s, 2 * k);
  }

  // max |rho^(k)| over [-1,1], dense scan, cached per order
  double sup_derivative(int k) const {
    if (k >= static_cast<int>(sup_.size())) throw Error("bump derivative order not tabulated");
    if (sup_[k] < 0.0) {
      double best = 0.0;
      const int nscan = 20001;
      for (int i = 0; i < nscan; ++i) {
        const double t = -1.0 + 2.0 * i / (nscan - 1);
        best = std::max(best, std::abs(derivative(k, t)));
      }
      sup_[k] = best;
    }
    return sup_[k];
  }

  int max_order() const { return static_cast<int>(nk_.size()) - 1; }

 private:
  void grow(int max_order) {
    if (nk_.empty()) nk_.push_back({1.0});
    while (static_cast<int>(nk_.size()) <= max_order) {
      const int k = static_cast<int>(nk_.size()) - 1;
      const std::vector<double>& n = nk_[k];
      std::vector<double> next(n.size() + 3, 0.0);
      auto add = [&next](size_t pow, double c) {
        if (pow >= next.size()) next.resize(pow + 1, 0.0);
        next[pow] += c;
      };
      for (size_t i = 0; i < n.size(); ++i) {
        add(i + 1, -2.0 * n[i]);                       // -2t N_k
        add(i + 1, 4.0 * k * n[i]);                    // 4kt N_k
        add(i + 3, -4.0 * k * n[i]);                   // 4kt(-t^2) N_k
        if (i >= 1) {
          add(i - 1, static_cast<double>(i) * n[i]);   // (1-t^2)^2 N_k': 1
          add(i + 1, -2.0 * i * n[i]);                 //               -2t^2
          add(i + 3, static_cast<double>(i) * n[i]);   //               +t^4
        }
      }
      nk_.push_back(std::move(next));
    }
    sup_.assign(nk_.size(), -1.0);
  }

  std::vector<std::vector<double>> nk_;
  mutable std::vector<double> sup_;
};

}  // namespace afree
