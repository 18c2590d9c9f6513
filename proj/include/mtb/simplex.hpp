#pragma once
// Covering linear programs: minimize g . x subject to A x >= 1 and x >= 0,
// where A is a tall nonnegative matrix (millions of rows, a handful of
// columns). Solved through the packing dual (maximize 1 . y subject to
// A^T y <= g, y >= 0) with a revised simplex whose basis is only d x d, so a
// pivot costs one scan over the rows. The returned primal point is checked
// against every row and against strong duality before it is accepted; any
// discrepancy throws instead of returning a wrong constant.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtb {

struct CoverLpResult {
  double value = 0.0;
  std::vector<double> x;  // per-column weights, size = objective dimension
  int pivots = 0;
};

class CoverLp {
 public:
  explicit CoverLp(std::vector<double> objective) : g_(std::move(objective)) {
    if (g_.empty()) throw std::invalid_argument("cover lp: objective is empty");
    for (const double gk : g_) {
      if (!(gk > 0.0) || !std::isfinite(gk))
        throw std::invalid_argument("cover lp: objective entries must be positive and finite");
    }
    offsets_.push_back(0);
  }

  int columns() const { return static_cast<int>(g_.size()); }
  std::int64_t rows() const { return static_cast<std::int64_t>(first_.size()); }

  // One constraint row; `coefficients` occupy consecutive columns starting at
  // `first_column` (0-based) and every other entry is zero.
  void add_row(int first_column, std::span<const double> coefficients) {
    const int d = columns();
    const int len = static_cast<int>(coefficients.size());
    if (len < 1 || first_column < 0 || first_column + len > d)
      throw std::invalid_argument("cover lp: row span outside the column range");
    bool any_positive = false;
    for (const double v : coefficients) {
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("cover lp: row coefficients must be finite and nonnegative");
      if (v > 0.0) any_positive = true;
    }
    if (!any_positive)
      throw std::invalid_argument("cover lp: constraint row has no positive coefficient, program infeasible");
    first_.push_back(first_column);
    vals_.insert(vals_.end(), coefficients.begin(), coefficients.end());
    offsets_.push_back(static_cast<std::int64_t>(vals_.size()));
  }

  CoverLpResult solve() const {
    const int d = columns();
    const std::int64_t m = rows();
    CoverLpResult res;
    res.x.assign(d, 0.0);
    if (m == 0) return res;  // nothing to cover

    // Basis column ids: [0, m) are dual variables y_r, [m, m + d) are slacks.
    std::vector<std::int64_t> basis(d);
    for (int i = 0; i < d; ++i) basis[i] = m + i;
    std::vector<double> binv(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) binv[i * d + i] = 1.0;
    std::vector<double> xb(g_);  // basic values; the all-slack start is feasible since g > 0

    std::vector<double> pi(d), col(d), w(d);
    const int max_pivots = 2000;
    for (res.pivots = 0; res.pivots <= max_pivots; ++res.pivots) {
      // Multipliers pi = c_B * B^{-1}; basic dual variables cost 1, slacks 0.
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int i = 0; i < d; ++i)
          if (basis[i] < m) s += binv[i * d + j];
        pi[j] = s;
      }
      // Entering column: the most positive reduced cost across all columns.
      std::int64_t enter = -1;
      double best_rc = 1e-12;
      for (int k = 0; k < d; ++k) {  // slack k has cost 0 and column e_k
        const double rc = -pi[k];
        if (rc > best_rc) { best_rc = rc; enter = m + k; }
      }
      for (std::int64_t r = 0; r < m; ++r) {  // dual variable r has cost 1
        double dot = 0.0;
        const double* v = vals_.data() + offsets_[r];
        const int fc = first_[r];
        const int len = static_cast<int>(offsets_[r + 1] - offsets_[r]);
        for (int t = 0; t < len; ++t) dot += pi[fc + t] * v[t];
        const double rc = 1.0 - dot;
        if (rc > best_rc) { best_rc = rc; enter = r; }
      }
      if (enter < 0) break;  // optimal

      gather_column(enter, m, col.data());
      for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += binv[i * d + j] * col[j];
        w[i] = s;
      }
      // Ratio test; ties go to the smallest basis id to fend off cycling.
      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < d; ++i) {
        if (w[i] > 1e-11) {
          const double ratio = xb[i] / w[i];
          if (leave < 0 || ratio < best_ratio - 1e-15 ||
              (ratio <= best_ratio + 1e-15 && basis[i] < basis[leave]))
            { leave = i; best_ratio = ratio; }
        }
      }
      if (leave < 0)
        throw std::runtime_error("cover lp: dual is unbounded (a constraint row vanished numerically)");

      basis[leave] = enter;
      refactor(basis, m, binv);
      for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += binv[i * d + j] * g_[j];
        xb[i] = std::max(s, 0.0);
      }
    }
    if (res.pivots > max_pivots) throw std::runtime_error("cover lp: simplex iteration limit hit");

    double dual_value = 0.0;
    for (int i = 0; i < d; ++i)
      if (basis[i] < m) dual_value += xb[i];
    // The primal solution is the vector of simplex multipliers at optimality.
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int i = 0; i < d; ++i)
        if (basis[i] < m) s += binv[i * d + j];
      res.x[j] = std::max(s, 0.0);
    }
    res.value = dual_value;
    certify(res, dual_value);
    return res;
  }

 private:
  void gather_column(std::int64_t id, std::int64_t m, double* out) const {
    const int d = columns();
    for (int j = 0; j < d; ++j) out[j] = 0.0;
    if (id >= m) { out[id - m] = 1.0; return; }
    const double* v = vals_.data() + offsets_[id];
    const int fc = first_[id];
    const int len = static_cast<int>(offsets_[id + 1] - offsets_[id]);
    for (int t = 0; t < len; ++t) out[fc + t] = v[t];
  }

  // Rebuild and invert the basis matrix from scratch (d <= a handful, so a
  // dense Gauss-Jordan per pivot is cheaper than maintaining the inverse).
  void refactor(const std::vector<std::int64_t>& basis, std::int64_t m, std::vector<double>& binv) const {
    const int d = columns();
    std::vector<double> a(static_cast<std::size_t>(d) * 2 * d, 0.0);  // [B | I]
    std::vector<double> col(d);
    for (int bi = 0; bi < d; ++bi) {
      gather_column(basis[bi], m, col.data());
      for (int i = 0; i < d; ++i) a[i * 2 * d + bi] = col[i];
    }
    for (int i = 0; i < d; ++i) a[i * 2 * d + d + i] = 1.0;
    for (int c = 0; c < d; ++c) {
      int piv = c;
      for (int i = c + 1; i < d; ++i)
        if (std::abs(a[i * 2 * d + c]) > std::abs(a[piv * 2 * d + c])) piv = i;
      if (std::abs(a[piv * 2 * d + c]) < 1e-13)
        throw std::runtime_error("cover lp: basis matrix is singular");
      if (piv != c)
        for (int j = 0; j < 2 * d; ++j) std::swap(a[piv * 2 * d + j], a[c * 2 * d + j]);
      const double inv_p = 1.0 / a[c * 2 * d + c];
      for (int j = 0; j < 2 * d; ++j) a[c * 2 * d + j] *= inv_p;
      for (int i = 0; i < d; ++i) {
        if (i == c) continue;
        const double f = a[i * 2 * d + c];
        if (f == 0.0) continue;
        for (int j = 0; j < 2 * d; ++j) a[i * 2 * d + j] -= f * a[c * 2 * d + j];
      }
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) binv[i * d + j] = a[i * 2 * d + d + j];
  }

  // Strong duality and feasibility must hold at the claimed optimum; anything
  // else means the arithmetic went wrong and the result cannot be trusted.
  void certify(const CoverLpResult& res, double dual_value) const {
    const int d = columns();
    double primal_value = 0.0;
    for (int j = 0; j < d; ++j) primal_value += g_[j] * res.x[j];
    if (std::abs(primal_value - dual_value) > 1e-7 * (1.0 + std::abs(dual_value)))
      throw std::runtime_error("cover lp: primal/dual objectives disagree at the optimum");
    const std::int64_t m = rows();
    for (std::int64_t r = 0; r < m; ++r) {
      double dot = 0.0;
      const double* v = vals_.data() + offsets_[r];
      const int fc = first_[r];
      const int len = static_cast<int>(offsets_[r + 1] - offsets_[r]);
      for (int t = 0; t < len; ++t) dot += v[t] * res.x[fc + t];
      if (dot < 1.0 - 1e-6)
        throw std::runtime_error("cover lp: claimed optimum violates row " + std::to_string(r));
    }
  }

  std::vector<double> g_;
  std::vector<double> vals_;
  std::vector<int> first_;
  std::vector<std::int64_t> offsets_;
};

}  // namespace mtb
