#include "ffdens/exact_lp.hpp"

#include <stdexcept>

namespace ffdens {

namespace {

struct Tableau {
  // rows: constraints, last column is the right hand side
  std::vector<std::vector<Rational>> t;
  std::vector<int> basis;
  int ncols = 0;

  void pivot(int r, int c) {
    const Rational p = t[r][c];
    for (auto& x : t[r]) x /= p;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if ((int)i == r || t[i][c] == 0) continue;
      const Rational m = t[i][c];
      for (int j = 0; j <= ncols; ++j) t[i][j] -= m * t[r][j];
    }
    basis[r] = c;
  }

  // Maximize obj over the current basis; columns with allowed[j] == false never enter.
  LpStatus optimize(const std::vector<Rational>& obj, const std::vector<bool>& allowed) {
    for (;;) {
      // Reduced costs.
      int enter = -1;
      for (int j = 0; j < ncols && enter < 0; ++j) {
        if (!allowed[j]) continue;
        Rational rc = obj[j];
        for (std::size_t i = 0; i < t.size(); ++i) rc -= obj[basis[i]] * t[i][j];
        if (rc > 0) enter = j;
      }
      if (enter < 0) return LpStatus::Optimal;
      int leave = -1;
      Rational best;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i][enter] <= 0) continue;
        const Rational ratio = t[i][ncols] / t[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult lp_maximize(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                     const std::vector<Rational>& c) {
  const int m = static_cast<int>(A.size()), n = static_cast<int>(c.size());
  if ((int)b.size() != m) throw std::invalid_argument("lp: shape mismatch");
  for (auto& row : A)
    if ((int)row.size() != n) throw std::invalid_argument("lp: shape mismatch");
  // Columns: x (n), slacks (m), artificials (m).
  Tableau T;
  T.ncols = n + 2 * m;
  T.t.assign(m, std::vector<Rational>(T.ncols + 1, Rational(0)));
  T.basis.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    const int sign = b[i] < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) T.t[i][j] = sign * A[i][j];
    T.t[i][n + i] = sign;
    T.t[i][T.ncols] = sign * b[i];
    if (sign < 0) {
      T.t[i][n + m + i] = 1;
      T.basis[i] = n + m + i;
    } else {
      T.basis[i] = n + i;
    }
  }
  std::vector<bool> allowed(T.ncols, true);
  std::vector<Rational> phase1(T.ncols, Rational(0));
  for (int i = 0; i < m; ++i) phase1[n + m + i] = -1;
  T.optimize(phase1, allowed);
  LpResult res;
  for (int i = 0; i < m; ++i)
    if (T.basis[i] >= n + m && T.t[i][T.ncols] != 0) return res;  // infeasible
  // Drive zero-level artificials out of the basis.
  for (int i = 0; i < m; ++i) {
    if (T.basis[i] < n + m) continue;
    for (int j = 0; j < n + m; ++j)
      if (T.t[i][j] != 0) {
        T.pivot(i, j);
        break;
      }
  }
  for (int j = n + m; j < T.ncols; ++j) allowed[j] = false;
  std::vector<Rational> obj(T.ncols, Rational(0));
  for (int j = 0; j < n; ++j) obj[j] = c[j];
  res.status = T.optimize(obj, allowed);
  if (res.status == LpStatus::Unbounded) return res;
  res.x.assign(n, Rational(0));
  for (int i = 0; i < m; ++i)
    if (T.basis[i] < n) res.x[T.basis[i]] = T.t[i][T.ncols];
  res.value = 0;
  for (int j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  return res;
}

}  // namespace ffdens
