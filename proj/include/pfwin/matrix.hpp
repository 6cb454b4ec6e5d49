#pragma once

// Dense exact integer matrices. Sizes here are at most 21x21, so the
// simple cubic algorithms are plenty.

#include "pfwin/core.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pfwin {

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto &r : rows) {
      if (r.size() != cols_) throw InvalidInput("ragged matrix literal");
      for (long v : r) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix column_vector(const std::vector<Int> &v) {
    IntMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool square() const { return rows_ == cols_; }

  Int &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const IntMatrix &) const = default;

  [[nodiscard]] std::vector<Int> column(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  [[nodiscard]] std::vector<Int> row(std::size_t i) const {
    return {data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_)};
  }
  void set_column(std::size_t j, const std::vector<Int> &c) {
    if (c.size() != rows_) throw InvalidInput("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  [[nodiscard]] IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw InvalidInput("block out of range");
    IntMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  [[nodiscard]] IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto &v : data_)
      if (v != 0) return false;
    return true;
  }

  friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
    if (a.cols_ != b.rows_) throw InvalidInput("matrix shapes do not compose");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int &aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<Int> operator*(const IntMatrix &a, const std::vector<Int> &v) {
    return (a * column_vector(v)).column(0);
  }

  friend IntMatrix operator+(IntMatrix a, const IntMatrix &b) {
    a.check_same(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix &b) {
    a.check_same(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend IntMatrix operator*(const Int &s, IntMatrix a) {
    for (auto &v : a.data_) v *= s;
    return a;
  }

  [[nodiscard]] IntMatrix pow(unsigned e) const {
    IntMatrix r = identity(rows_), b = *this;
    for (; e; e >>= 1, b = b * b)
      if (e & 1u) r = r * b;
    return r;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row a += k * row b
  void add_row(std::size_t a, std::size_t b, const Int &k) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) += k * (*this)(b, j);
  }
  void add_col(std::size_t a, std::size_t b, const Int &k) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) += k * (*this)(i, b);
  }

  [[nodiscard]] std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      s += "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? " " : "") + (*this)(i, j).str();
      s += "]\n";
    }
    return s;
  }

private:
  void check_same(const IntMatrix &b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw InvalidInput("matrix shapes differ");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

// Bareiss fraction-free elimination.
inline Int determinant(IntMatrix a) {
  if (!a.square()) throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

using RationalMatrix = std::vector<std::vector<Rational>>;

namespace detail {

inline RationalMatrix to_rational(const IntMatrix &a) {
  RationalMatrix r(a.rows(), std::vector<Rational>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i][j] = a(i, j);
  return r;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RationalMatrix &m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < ncols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Rational inv = 1 / m[row][c];
    for (auto &v : m[row]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

} // namespace detail

inline std::size_t rank(const IntMatrix &a) {
  auto m = detail::to_rational(a);
  return detail::rref(m, a.cols()).size();
}

/// Solves A X = B exactly. Returns nullopt if the system is inconsistent or
/// the solution is not unique.
inline std::optional<RationalMatrix> solve_rational(const IntMatrix &a, const IntMatrix &b) {
  if (a.rows() != b.rows()) throw InvalidInput("solve: row count mismatch");
  RationalMatrix m(a.rows(), std::vector<Rational>(a.cols() + b.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m[i][a.cols() + j] = b(i, j);
  }
  auto pivots = detail::rref(m, a.cols());
  if (pivots.size() != a.cols()) return std::nullopt;
  for (std::size_t i = pivots.size(); i < m.size(); ++i)
    for (std::size_t j = a.cols(); j < m[i].size(); ++j)
      if (m[i][j] != 0) return std::nullopt;
  RationalMatrix x(a.cols(), std::vector<Rational>(b.cols()));
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x[i][j] = m[i][a.cols() + j];
  return x;
}

inline std::optional<IntMatrix> to_integral(const RationalMatrix &r) {
  const std::size_t nr = r.size(), nc = nr ? r[0].size() : 0;
  IntMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      if (denominator(r[i][j]) != 1) return std::nullopt;
      out(i, j) = numerator(r[i][j]);
    }
  return out;
}

/// Integer solution of A X = B, or nullopt if none exists (or not unique).
inline std::optional<IntMatrix> solve_integral(const IntMatrix &a, const IntMatrix &b) {
  auto x = solve_rational(a, b);
  if (!x) return std::nullopt;
  return to_integral(*x);
}

/// Inverse over Z; throws if the matrix is not unimodular.
inline IntMatrix inverse_unimodular(const IntMatrix &a) {
  if (!a.square()) throw InvalidInput("inverse of a non-square matrix");
  auto x = solve_integral(a, IntMatrix::identity(a.rows()));
  if (!x) throw InconsistencyError("matrix is not invertible over the integers");
  return *x;
}

struct SmithForm {
  IntMatrix u, d, v; ///< u * a * v == d
  std::size_t rank = 0;
  std::vector<Int> invariant_factors;
};

inline SmithForm smith_normal_form(const IntMatrix &a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm s{IntMatrix::identity(m), a, IntMatrix::identity(n), 0, {}};
  IntMatrix &d = s.d;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second))))
            best = {i, j};
      if (!best) goto done;
      d.swap_rows(t, best->first);
      s.u.swap_rows(t, best->first);
      d.swap_cols(t, best->second);
      s.v.swap_cols(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        d.add_row(i, t, -q);
        s.u.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        d.add_col(j, t, -q);
        s.v.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < m && !bad; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (!bad) break;
      d.add_row(t, *bad, 1);
      s.u.add_row(t, *bad, 1);
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < m; ++j) s.u(t, j) = -s.u(t, j);
    }
    s.invariant_factors.push_back(d(t, t));
    ++s.rank;
  }
done:
  return s;
}

/// Characteristic polynomial det(x I - A), coefficients from x^n down to x^0
/// (Faddeev-LeVerrier; divisions are exact).
inline std::vector<Int> charpoly(const IntMatrix &a) {
  if (!a.square()) throw InvalidInput("charpoly of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Int> c(n + 1);
  c[0] = 1;
  IntMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix prod = a * mk;
    IntMatrix next = prod;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[k - 1];
    mk = next;
    IntMatrix am = a * mk;
    Int tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[k] = -tr / static_cast<long>(k);
  }
  return c;
}

} // namespace pfwin
