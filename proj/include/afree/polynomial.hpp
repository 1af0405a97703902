#ifndef AFREE_POLYNOMIAL_HPP
#define AFREE_POLYNOMIAL_HPP

#include <Eigen/Core>

#include <cmath>
#include <map>
#include <vector>

#include "afree/multi_index.hpp"
#include "afree/rational.hpp"

namespace afree {

// Sparse polynomial in x_1..x_d with rational coefficients. Zero terms are
// never stored, so structural equality is canonical.
class PolyCoefficient {
 public:
  PolyCoefficient() = default;

  explicit PolyCoefficient(int d) : d_(d) {}

  static PolyCoefficient constant(int d, const Rational& c) {
    PolyCoefficient p(d);
    p.add_term(MultiIndex::zeros(d), c);
    return p;
  }

  static PolyCoefficient monomial(int d, const MultiIndex& e, const Rational& c) {
    PolyCoefficient p(d);
    p.add_term(e, c);
    return p;
  }

  int dim() const { return d_; }
  bool zero() const { return terms_.empty(); }

  const std::map<MultiIndex, Rational>& terms() const { return terms_; }

  void add_term(const MultiIndex& e, const Rational& c) {
    if (e.dim() != d_) throw DimensionMismatch("monomial exponent dimension mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (c != 0) terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  PolyCoefficient& operator+=(const PolyCoefficient& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  PolyCoefficient operator*(const PolyCoefficient& o) const {
    PolyCoefficient r(d_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  PolyCoefficient derivative(int axis) const {
    PolyCoefficient r(d_);
    for (const auto& [e, c] : terms_) {
      if (e[axis] == 0) continue;
      std::vector<int> ex = e.exponents();
      ex[axis] -= 1;
      r.add_term(MultiIndex(std::move(ex)), c * e[axis]);
    }
    return r;
  }

  PolyCoefficient scaled(const Rational& s) const {
    PolyCoefficient r(d_);
    if (s == 0) return r;
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
  }

  // True when the polynomial is the constant c.
  bool is_constant(const Rational& c) const {
    if (c == 0) return zero();
    return terms_.size() == 1 && terms_.begin()->first.order() == 0 &&
           terms_.begin()->second == c;
  }

  double eval(const Eigen::VectorXd& x) const {
    if (x.size() != d_) throw DimensionMismatch("polynomial evaluated at point of wrong dimension");
    double s = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = to_double(c);
      for (int k = 0; k < d_; ++k)
        for (int p = 0; p < e[k]; ++p) t *= x[k];
      s += t;
    }
    return s;
  }

  Rational eval_exact(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != d_)
      throw DimensionMismatch("polynomial evaluated at point of wrong dimension");
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (int k = 0; k < d_; ++k)
        for (int p = 0; p < e[k]; ++p) t *= x[k];
      s += t;
    }
    return s;
  }

  bool operator==(const PolyCoefficient& o) const = default;

 private:
  int d_ = 0;
  std::map<MultiIndex, Rational> terms_;
};

}  // namespace afree

#endif
