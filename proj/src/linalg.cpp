#include "phigamma/linalg.hpp"

namespace phigamma {

SolveResult solve_linear(PMatrix A, std::vector<Padic> b, int p) {
  SolveResult out;
  const size_t rows = A.size();
  const size_t cols = rows ? A[0].size() : 0;
  std::vector<long> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t best = rows;
    long best_v = kInf;
    for (size_t i = r; i < rows; ++i) {
      if (!A[i][c].is_zero() && A[i][c].val() < best_v) {
        best_v = A[i][c].val();
        best = i;
      }
    }
    if (best == rows) continue;
    std::swap(A[r], A[best]);
    std::swap(b[r], b[best]);
    Padic inv = A[r][c].inv();
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c].is_zero()) continue;
      Padic f = A[i][c] * inv;
      for (size_t j = c; j < cols; ++j) {
        if (!A[r][j].is_exact_zero()) A[i][j] -= f * A[r][j];
      }
      A[i][c] = Padic::zero(p);
      b[i] -= f * b[r];
    }
    pivot_col.push_back(static_cast<long>(c));
    ++r;
  }
  out.rank = static_cast<long>(r);
  out.consistent = true;
  for (size_t i = r; i < rows; ++i) {
    if (!b[i].is_zero()) {
      out.consistent = false;
      out.residual_val = std::min(out.residual_val, b[i].val());
    }
  }
  out.x.assign(cols, Padic::zero(p));
  for (size_t k = 0; k < r; ++k) {
    size_t c = static_cast<size_t>(pivot_col[k]);
    out.x[c] = b[k] / A[k][c];
  }
  return out;
}

}  // namespace phigamma
