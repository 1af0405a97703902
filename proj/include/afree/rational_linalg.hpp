#pragma once

#include <optional>
#include <vector>

#include "afree/rational.hpp"

namespace afree {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

// Reduced row echelon form in place. Returns the pivot column indices in row
// order. Exact; no pivoting heuristics are needed over the rationals.
std::vector<int> rref(RationalMatrix& M);

struct AffineSolution {
  RationalVector particular;
  std::vector<RationalVector> nullspace;  // basis vectors, one per free column
};

// Solution set of A x = b, or nullopt when inconsistent. A must be nonempty.
std::optional<AffineSolution> solve_affine(const RationalMatrix& A, const RationalVector& b);

// Minimum-Euclidean-norm element of {p + span(N)}: solves the normal
// equations (N N^T) s = -N p^T exactly. N rows are the nullspace basis.
RationalVector min_norm_point(const RationalVector& p, const std::vector<RationalVector>& N);

struct MarginSearch {
  Rational margin;      // max over the affine set of min_i x_i
  RationalVector point; // attaining element
};

// Maximizes t subject to x = p + N s, x_i >= t, over free s and t, by exact
// two-phase simplex with Bland's rule. The caller must ensure boundedness
// (here: some constraint row caps min_i x_i); unboundedness throws.
MarginSearch max_min_margin(const RationalVector& p, const std::vector<RationalVector>& N);

}  // namespace afree
