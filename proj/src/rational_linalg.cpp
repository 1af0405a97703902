#include "afree/rational_linalg.hpp"

#include <algorithm>

#include "afree/errors.hpp"

namespace afree {

std::vector<int> rref(RationalMatrix& M) {
  std::vector<int> pivots;
  if (M.empty()) return pivots;
  const int rows = static_cast<int>(M.size());
  const int cols = static_cast<int>(M[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i) {
      if (M[i][c] != 0) {
        pr = i;
        break;
      }
    }
    if (pr < 0) continue;
    std::swap(M[r], M[pr]);
    const Rational inv = M[r][c];
    for (int j = c; j < cols; ++j) M[r][j] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == 0) continue;
      const Rational f = M[i][c];
      for (int j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::optional<AffineSolution> solve_affine(const RationalMatrix& A, const RationalVector& b) {
  if (A.empty() || A.size() != b.size()) throw DimensionMismatch("solve_affine shape");
  const int rows = static_cast<int>(A.size());
  const int cols = static_cast<int>(A[0].size());
  RationalMatrix M(rows, RationalVector(cols + 1));
  for (int i = 0; i < rows; ++i) {
    std::copy(A[i].begin(), A[i].end(), M[i].begin());
    M[i][cols] = b[i];
  }
  const std::vector<int> pivots = rref(M);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;

  AffineSolution sol;
  sol.particular.assign(cols, 0);
  std::vector<int> pivot_row(cols, -1);
  for (int i = 0; i < static_cast<int>(pivots.size()); ++i) {
    pivot_row[pivots[i]] = i;
    sol.particular[pivots[i]] = M[i][cols];
  }
  for (int c = 0; c < cols; ++c) {
    if (pivot_row[c] >= 0) continue;
    RationalVector v(cols, 0);
    v[c] = 1;
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i) v[pivots[i]] = -M[i][c];
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

RationalVector min_norm_point(const RationalVector& p, const std::vector<RationalVector>& N) {
  if (N.empty()) return p;
  const int d = static_cast<int>(p.size());
  const int r = static_cast<int>(N.size());
  // Gram system [N N^T | -N p]; the basis rows are independent so the Gram
  // matrix is positive definite and rref yields a full pivot set.
  RationalMatrix G(r, RationalVector(r + 1, 0));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      Rational s = 0;
      for (int k = 0; k < d; ++k) s += N[i][k] * N[j][k];
      G[i][j] = s;
    }
    Rational rhs = 0;
    for (int k = 0; k < d; ++k) rhs += N[i][k] * p[k];
    G[i][r] = -rhs;
  }
  const std::vector<int> pivots = rref(G);
  if (static_cast<int>(pivots.size()) != r)
    throw Error("degenerate Gram matrix in min_norm_point");
  RationalVector beta = p;
  for (int i = 0; i < r; ++i) {
    const Rational& s = G[i][r];
    for (int k = 0; k < d; ++k) beta[k] += s * N[i][k];
  }
  return beta;
}

namespace {

// Exact primal simplex on a dense tableau. T has m constraint rows plus a
// reduced-cost row; column n holds the right-hand side. Bland's rule on both
// the entering and leaving choices guarantees termination.
class Tableau {
 public:
  Tableau(int m, int n) : m_(m), n_(n), t_(m + 1, RationalVector(n + 1, 0)), basis_(m, -1) {}

  Rational& at(int i, int j) { return t_[i][j]; }
  Rational& rhs(int i) { return t_[i][n_]; }
  Rational& cost(int j) { return t_[m_][j]; }
  Rational& objective() { return t_[m_][n_]; }
  int basis(int i) const { return basis_[i]; }
  void set_basis(int i, int j) { basis_[i] = j; }
  int rows() const { return m_; }
  int cols() const { return n_; }

  void pivot(int pr, int pc) {
    const Rational inv = t_[pr][pc];
    for (int j = 0; j <= n_; ++j) t_[pr][j] /= inv;
    for (int i = 0; i <= m_; ++i) {
      if (i == pr || t_[i][pc] == 0) continue;
      const Rational f = t_[i][pc];
      for (int j = 0; j <= n_; ++j) t_[i][j] -= f * t_[pr][j];
    }
    basis_[pr] = pc;
  }

  // Runs until no negative reduced cost remains. active(j) masks columns
  // eligible to enter (used to keep phase-1 artificials out of phase 2).
  template <class Active>
  void minimize(Active active) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < n_; ++j) {
        if (active(j) && t_[m_][j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      Rational best = 0;
      for (int i = 0; i < m_; ++i) {
        if (t_[i][enter] <= 0) continue;
        const Rational ratio = t_[i][n_] / t_[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) throw Error("unbounded linear program in max_min_margin");
      pivot(leave, enter);
    }
  }

  RationalVector solution() const {
    RationalVector x(n_, 0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= 0 && basis_[i] < n_) x[basis_[i]] = t_[i][n_];
    return x;
  }

 private:
  int m_;
  int n_;
  RationalMatrix t_;
  std::vector<int> basis_;
};

}  // namespace

MarginSearch max_min_margin(const RationalVector& p, const std::vector<RationalVector>& N) {
  const int d = static_cast<int>(p.size());
  const int r = static_cast<int>(N.size());
  // Variables: s+ (r), s- (r), t+, t-, slack w (d), artificials (d).
  // Constraint i: -(N s)_i + t - ... encoded as
  //   -sum_r N[r][i] (s+_r - s-_r) + (t+ - t-) + w_i = p_i.
  const int nv = 2 * r + 2 + d;
  const int n = nv + d;
  Tableau T(d, n);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < r; ++k) {
      T.at(i, k) = -N[k][i];
      T.at(i, r + k) = N[k][i];
    }
    T.at(i, 2 * r) = 1;
    T.at(i, 2 * r + 1) = -1;
    T.at(i, 2 * r + 2 + i) = 1;
    T.rhs(i) = p[i];
    if (T.rhs(i) < 0)
      for (int j = 0; j <= n; ++j) T.at(i, j) = -T.at(i, j);
    T.at(i, nv + i) = 1;
    T.set_basis(i, nv + i);
  }

  // Phase 1: minimize the artificial sum; its reduced-cost row is the
  // negated column sums over the constraint rows.
  for (int j = 0; j < nv; ++j) {
    Rational s = 0;
    for (int i = 0; i < d; ++i) s += T.at(i, j);
    T.cost(j) = -s;
  }
  Rational rhs_sum = 0;
  for (int i = 0; i < d; ++i) rhs_sum += T.rhs(i);
  T.objective() = -rhs_sum;
  T.minimize([](int) { return true; });
  if (T.objective() != 0) throw Error("phase-1 infeasibility in max_min_margin");
  for (int i = 0; i < d; ++i) {
    if (T.basis(i) < nv) continue;
    int pc = -1;
    for (int j = 0; j < nv; ++j) {
      if (T.at(i, j) != 0) {
        pc = j;
        break;
      }
    }
    if (pc >= 0) T.pivot(i, pc);
    // A fully zero row is redundant; leaving the artificial basic at value 0
    // is harmless because phase 2 never lets it re-enter.
  }

  // Phase 2: minimize -(t+ - t-).
  for (int j = 0; j <= n; ++j) T.cost(j) = 0;
  T.cost(2 * r) = -1;
  T.cost(2 * r + 1) = 1;
  for (int i = 0; i < d; ++i) {
    const int b = T.basis(i);
    if (T.cost(b) == 0) continue;
    const Rational f = T.cost(b);
    for (int j = 0; j <= n; ++j) T.cost(j) -= f * T.at(i, j);
  }
  T.minimize([nv](int j) { return j < nv; });

  const RationalVector x = T.solution();
  MarginSearch out;
  out.margin = x[2 * r] - x[2 * r + 1];
  out.point = p;
  for (int k = 0; k < r; ++k) {
    const Rational s = x[k] - x[r + k];
    for (int i = 0; i < d; ++i) out.point[i] += s * N[k][i];
  }
  return out;
}

}  // namespace afree
