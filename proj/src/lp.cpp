#include "ergo/lp.hpp"

#include <optional>

#include "ergo/error.hpp"

namespace ergo {

namespace {

class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs,
          std::vector<std::size_t> basis)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  std::size_t row_count() const { return rows_.size(); }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const Rational& entry(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  const Rational& rhs(std::size_t r) const { return rhs_[r]; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = rows_[r][c];
    for (auto& v : rows_[r]) v /= p;
    rhs_[r] /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      const Rational f = rows_[i][c];
      for (std::size_t j = 0; j < rows_[i].size(); ++j) rows_[i][j] -= f * rows_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  // Minimizes cost over columns [0, active). Returns false if unbounded.
  bool run(const std::vector<Rational>& cost, std::size_t active) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < active && !enter; ++j) {
        if (reduced_cost(cost, j) < 0) enter = j;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r][*enter] <= 0) continue;
        Rational ratio = rhs_[r] / rows_[r][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) v += cost[basis_[r]] * rhs_[r];
    return v;
  }

 private:
  Rational reduced_cost(const std::vector<Rational>& cost, std::size_t j) const {
    Rational v = cost[j];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r][j] != 0) v -= cost[basis_[r]] * rows_[r][j];
    }
    return v;
  }

  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                  const std::vector<Rational>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw Error(ErrorKind::kInvalidInput, "lp: row count mismatch");
  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(n + m));
  std::vector<Rational> rhs(m);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (A[i].size() != n) throw Error(ErrorKind::kInvalidInput, "lp: column count mismatch");
    const int sign = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = sign * A[i][j];
    rows[i][n + i] = 1;
    rhs[i] = sign * b[i];
    basis[i] = n + i;
  }
  Tableau t(std::move(rows), std::move(rhs), std::move(basis));

  std::vector<Rational> phase1(n + m, Rational(0));
  for (std::size_t i = n; i < n + m; ++i) phase1[i] = 1;
  t.run(phase1, n + m);
  LpResult res;
  if (t.objective(phase1) != 0) return res;

  // Drive artificial variables out of the basis; rows where that is
  // impossible are redundant.
  for (std::size_t r = t.row_count(); r-- > 0;) {
    if (t.basis()[r] < n) continue;
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n && !col; ++j) {
      if (t.entry(r, j) != 0) col = j;
    }
    if (col) {
      t.pivot(r, *col);
    } else {
      t.drop_row(r);
    }
  }

  std::vector<Rational> phase2(n + m, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  if (!t.run(phase2, n)) {
    res.status = LpStatus::kUnbounded;
    return res;
  }
  res.status = LpStatus::kOptimal;
  res.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < t.row_count(); ++r) res.x[t.basis()[r]] = t.rhs(r);
  res.value = t.objective(phase2);
  return res;
}

}  // namespace ergo
