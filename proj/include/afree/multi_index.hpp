#ifndef AFREE_MULTI_INDEX_HPP
#define AFREE_MULTI_INDEX_HPP

#include <compare>
#include <numeric>
#include <string>
#include <vector>

#include "afree/errors.hpp"

namespace afree {

// Derivative multi-index over R^d. Entries are non-negative; the
// componentwise partial order drives principal-part extraction.
class MultiIndex {
 public:
  MultiIndex() = default;

  explicit MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
    for (int v : e_)
      if (v < 0) throw Error("multi-index entries must be non-negative");
  }

  static MultiIndex zeros(int d) { return MultiIndex(std::vector<int>(d, 0)); }

  static MultiIndex unit(int d, int axis) {
    std::vector<int> e(d, 0);
    e[axis] = 1;
    return MultiIndex(std::move(e));
  }

  int dim() const { return static_cast<int>(e_.size()); }

  // |alpha| = sum of entries.
  int order() const { return std::accumulate(e_.begin(), e_.end(), 0); }

  int operator[](int k) const { return e_[k]; }

  const std::vector<int>& exponents() const { return e_; }

  MultiIndex operator+(const MultiIndex& o) const {
    if (dim() != o.dim()) throw DimensionMismatch("multi-index dimension mismatch in +");
    std::vector<int> s(e_);
    for (int k = 0; k < dim(); ++k) s[k] += o.e_[k];
    return MultiIndex(std::move(s));
  }

  // Componentwise alpha <= other.
  bool leq(const MultiIndex& o) const {
    if (dim() != o.dim()) throw DimensionMismatch("multi-index dimension mismatch in leq");
    for (int k = 0; k < dim(); ++k)
      if (e_[k] > o.e_[k]) return false;
    return true;
  }

  // True when `o` strictly dominates this index (componentwise >= and != ).
  bool dominated_by(const MultiIndex& o) const { return leq(o) && e_ != o.e_; }

  // Lexicographic order; used only as a canonical container key.
  auto operator<=>(const MultiIndex& o) const = default;

  std::string str() const {
    std::string s = "(";
    for (int k = 0; k < dim(); ++k) {
      if (k) s += ",";
      s += std::to_string(e_[k]);
    }
    return s + ")";
  }

 private:
  std::vector<int> e_;
};

}  // namespace afree

#endif
