#ifndef AFREE_OPERATOR_SYSTEM_HPP
#define AFREE_OPERATOR_SYSTEM_HPP

#include <map>
#include <vector>

#include "afree/polynomial.hpp"

namespace afree {

// One equation of the system: derivative order -> length-m coefficient
// vector of polynomials. Terms whose coefficient vector is entirely zero
// are never stored.
struct Equation {
  std::map<MultiIndex, std::vector<PolyCoefficient>> terms;
};

// Linear PDE system sum_alpha D^alpha (A_alpha mu) = 0 with polynomial
// coefficients; immutable after construction.
class OperatorSystem {
 public:
  OperatorSystem(int d, int m, std::vector<Equation> equations)
      : d_(d), m_(m), eqs_(std::move(equations)) {
    validate();
  }

  int d() const { return d_; }
  int m() const { return m_; }
  int n() const { return static_cast<int>(eqs_.size()); }

  const Equation& equation(int j) const { return eqs_[j]; }
  const std::vector<Equation>& equations() const { return eqs_; }

  // Max |alpha| across all stored terms.
  int max_order() const {
    int k = 0;
    for (const auto& eq : eqs_)
      for (const auto& [a, c] : eq.terms) k = std::max(k, a.order());
    return k;
  }

  bool operator==(const OperatorSystem& o) const {
    return d_ == o.d_ && m_ == o.m_ && n() == o.n() && equal_terms(o);
  }

 private:
  bool equal_terms(const OperatorSystem& o) const {
    for (int j = 0; j < n(); ++j)
      if (eqs_[j].terms != o.eqs_[j].terms) return false;
    return true;
  }

  void validate() const {
    if (d_ < 1) throw Error("operator dimension d must be >= 1");
    if (m_ < 1) throw Error("operator must act on at least one measure component");
    if (eqs_.empty()) throw Error("operator must have at least one equation");
    for (const auto& eq : eqs_) {
      if (eq.terms.empty()) throw Error("every equation needs at least one nonzero term");
      for (const auto& [a, coeff] : eq.terms) {
        if (a.dim() != d_) throw DimensionMismatch("term multi-index of wrong length");
        if (static_cast<int>(coeff.size()) != m_)
          throw DimensionMismatch("coefficient vector length differs from m");
        bool nonzero = false;
        for (const auto& p : coeff) {
          if (p.dim() != d_) throw DimensionMismatch("coefficient polynomial of wrong dimension");
          nonzero = nonzero || !p.zero();
        }
        if (!nonzero) throw Error("stored term with all-zero coefficient vector");
      }
    }
  }

  int d_;
  int m_;
  std::vector<Equation> eqs_;
};

}  // namespace afree

#endif
