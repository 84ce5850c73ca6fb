#pragma once

// Integer matrices, Smith normal form and its invariant factors.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace slist {

using BigInt = boost::multiprecision::cpp_int;

struct OverflowError : std::overflow_error {
  OverflowError() : std::overflow_error("int64 overflow") {}
};

/// int64 with overflow checks on every operation.
struct Checked {
  std::int64_t v = 0;
  Checked() = default;
  Checked(std::int64_t x) : v(x) {}
  friend Checked operator+(Checked a, Checked b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw OverflowError();
    return r;
  }
  friend Checked operator-(Checked a, Checked b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw OverflowError();
    return r;
  }
  friend Checked operator*(Checked a, Checked b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw OverflowError();
    return r;
  }
  friend Checked operator/(Checked a, Checked b) {
    if (a.v == INT64_MIN && b.v == -1) throw OverflowError();
    return a.v / b.v;
  }
  friend Checked operator%(Checked a, Checked b) {
    if (b.v == -1) return 0;
    return a.v % b.v;
  }
  Checked operator-() const {
    if (v == INT64_MIN) throw OverflowError();
    return -v;
  }
  friend bool operator==(Checked a, Checked b) { return a.v == b.v; }
  friend auto operator<=>(Checked a, Checked b) { return a.v <=> b.v; }
};

inline Checked absval(Checked a) { return a.v < 0 ? -a : a; }
inline BigInt absval(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }
inline BigInt to_big(Checked a) { return BigInt(a.v); }
inline BigInt to_big(const BigInt& a) { return a; }
inline bool is_zero(Checked a) { return a.v == 0; }
inline bool is_zero(const BigInt& a) { return a.is_zero(); }

/// Sparse integer matrix stored by columns; entries are nonzero.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::map<std::size_t, std::int64_t>> columns;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns[i][i] = 1;
    return m;
  }
  std::int64_t at(std::size_t r, std::size_t c) const {
    auto it = columns.at(c).find(r);
    return it == columns[c].end() ? 0 : it->second;
  }
  void add(std::size_t r, std::size_t c, std::int64_t v) {
    if (r >= rows || c >= cols) throw std::out_of_range("IntMatrix::add");
    auto& e = columns[c][r];
    Checked s = Checked(e) + Checked(v);
    e = s.v;
    if (e == 0) columns[c].erase(r);
  }
  bool is_zero() const {
    for (const auto& c : columns)
      if (!c.empty()) return false;
    return true;
  }
  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
  }
  bool operator==(const IntMatrix&) const = default;
};

/// a * b
inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("multiply: dimension mismatch");
  IntMatrix c(a.rows, b.cols);
  for (std::size_t j = 0; j < b.cols; ++j)
    for (const auto& [k, v] : b.columns[j])
      for (const auto& [i, w] : a.columns[k]) c.add(i, j, (Checked(v) * Checked(w)).v);
  return c;
}

inline IntMatrix add(const IntMatrix& a, const IntMatrix& b, std::int64_t sb = 1) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("add: dimension mismatch");
  IntMatrix c = a;
  for (std::size_t j = 0; j < b.cols; ++j)
    for (const auto& [i, v] : b.columns[j]) c.add(i, j, (Checked(sb) * Checked(v)).v);
  return c;
}

template <class T>
using Dense = std::vector<std::vector<T>>;

template <class T>
Dense<T> to_dense(const IntMatrix& m) {
  Dense<T> d(m.rows, std::vector<T>(m.cols, T(0)));
  for (std::size_t j = 0; j < m.cols; ++j)
    for (const auto& [i, v] : m.columns[j]) d[i][j] = T(v);
  return d;
}

namespace detail {

/// Diagonalizes d in place (pivot of least absolute value), returning the
/// nonzero invariant factors. When U and V are given, tracks U * A * V = D.
template <class T>
std::vector<T> dense_smith(Dense<T>& d, std::size_t rows, std::size_t cols, Dense<T>* U = nullptr,
                           Dense<T>* V = nullptr) {
  auto row_op = [&](std::size_t dst, std::size_t src, const T& q) {  // row dst -= q * row src
    for (std::size_t c = 0; c < cols; ++c)
      if (!is_zero(d[src][c])) d[dst][c] = d[dst][c] - q * d[src][c];
    if (U)
      for (std::size_t c = 0; c < rows; ++c)
        if (!is_zero((*U)[src][c])) (*U)[dst][c] = (*U)[dst][c] - q * (*U)[src][c];
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const T& q) {  // col dst -= q * col src
    for (std::size_t r = 0; r < rows; ++r)
      if (!is_zero(d[r][src])) d[r][dst] = d[r][dst] - q * d[r][src];
    if (V)
      for (std::size_t r = 0; r < cols; ++r)
        if (!is_zero((*V)[r][src])) (*V)[r][dst] = (*V)[r][dst] - q * (*V)[r][src];
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(d[a], d[b]);
    if (U) std::swap((*U)[a], (*U)[b]);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : d) std::swap(row[a], row[b]);
    if (V)
      for (auto& row : *V) std::swap(row[a], row[b]);
  };
  auto negate_row = [&](std::size_t r) {
    for (auto& x : d[r]) x = -x;
    if (U)
      for (auto& x : (*U)[r]) x = -x;
  };
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // pivot: least nonzero absolute value in the remaining block
    auto find_pivot = [&](std::size_t& pr, std::size_t& pc) {
      bool found = false;
      T best(0);
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c)
          if (!is_zero(d[r][c]) && (!found || absval(d[r][c]) < best)) {
            best = absval(d[r][c]);
            pr = r;
            pc = c;
            found = true;
          }
      return found;
    };
    std::size_t pr = 0, pc = 0;
    if (!find_pivot(pr, pc)) break;
    swap_rows(t, pr);
    swap_cols(t, pc);
    while (true) {
      bool changed = false;
      for (std::size_t r = t + 1; r < rows; ++r)
        if (!is_zero(d[r][t])) {
          row_op(r, t, d[r][t] / d[t][t]);
          if (!is_zero(d[r][t])) changed = true;
        }
      for (std::size_t c = t + 1; c < cols; ++c)
        if (!is_zero(d[t][c])) {
          col_op(c, t, d[t][c] / d[t][t]);
          if (!is_zero(d[t][c])) changed = true;
        }
      if (!changed) {
        // divisibility of the remaining block
        std::size_t bad_r = rows;
        for (std::size_t r = t + 1; r < rows && bad_r == rows; ++r)
          for (std::size_t c = t + 1; c < cols; ++c)
            if (!is_zero(d[r][c] % d[t][t])) {
              bad_r = r;
              break;
            }
        if (bad_r == rows) break;
        row_op(t, bad_r, T(-1));  // row t += row bad_r
        changed = true;
      }
      // move the smallest entry of row t / column t to the pivot
      std::size_t br = t, bc = t;
      T best = absval(d[t][t]);
      for (std::size_t r = t + 1; r < rows; ++r)
        if (!is_zero(d[r][t]) && absval(d[r][t]) < best) best = absval(d[r][t]), br = r, bc = t;
      for (std::size_t c = t + 1; c < cols; ++c)
        if (!is_zero(d[t][c]) && absval(d[t][c]) < best) best = absval(d[t][c]), br = t, bc = c;
      swap_rows(t, br);
      swap_cols(t, bc);
    }
    if (d[t][t] < T(0)) negate_row(t);
  }
  std::vector<T> out;
  for (std::size_t s = 0; s < t; ++s) out.push_back(d[s][s]);
  return out;
}

/// Invariant factors of a sparse matrix: unit pivots are eliminated first,
/// the rest goes to the dense routine.
template <class T>
std::vector<BigInt> invariant_factors_impl(const IntMatrix& m) {
  // rows as maps, and the set of rows touching each column
  std::vector<std::map<std::size_t, T>> rows(m.rows);
  std::vector<std::set<std::size_t>> col_rows(m.cols);
  for (std::size_t j = 0; j < m.cols; ++j)
    for (const auto& [i, v] : m.columns[j]) {
      rows[i][j] = T(v);
      col_rows[j].insert(i);
    }
  std::vector<bool> row_alive(m.rows, true), col_alive(m.cols, true);
  std::size_t units = 0;
  while (true) {
    // unit entry in the sparsest row
    std::size_t pr = m.rows, pc = 0, best = SIZE_MAX;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (!row_alive[i] || rows[i].empty() || rows[i].size() >= best) continue;
      for (const auto& [j, v] : rows[i])
        if (absval(v) == T(1)) {
          pr = i;
          pc = j;
          best = rows[i].size();
          break;
        }
    }
    if (pr == m.rows) break;
    ++units;
    T p = rows[pr][pc];
    std::vector<std::size_t> others(col_rows[pc].begin(), col_rows[pc].end());
    for (std::size_t r : others) {
      if (r == pr) continue;
      T q = rows[r][pc] * p;  // p = +-1, so q = rows[r][pc] / p
      for (const auto& [j, v] : rows[pr]) {
        T nv = (rows[r].count(j) ? rows[r][j] : T(0)) - q * v;
        if (is_zero(nv)) {
          rows[r].erase(j);
          col_rows[j].erase(r);
        } else {
          rows[r][j] = nv;
          col_rows[j].insert(r);
        }
      }
    }
    // drop the pivot row and column
    for (const auto& [j, v] : rows[pr]) col_rows[j].erase(pr);
    rows[pr].clear();
    row_alive[pr] = false;
    col_alive[pc] = false;
  }
  // remaining nonzero block
  std::vector<std::size_t> rs, cs;
  std::map<std::size_t, std::size_t> cpos;
  for (std::size_t i = 0; i < m.rows; ++i)
    if (row_alive[i] && !rows[i].empty()) rs.push_back(i);
  for (std::size_t j = 0; j < m.cols; ++j)
    if (col_alive[j] && !col_rows[j].empty()) {
      cpos[j] = cs.size();
      cs.push_back(j);
    }
  Dense<T> d(rs.size(), std::vector<T>(cs.size(), T(0)));
  for (std::size_t a = 0; a < rs.size(); ++a)
    for (const auto& [j, v] : rows[rs[a]]) d[a][cpos.at(j)] = v;
  std::vector<BigInt> out(units, BigInt(1));
  for (const auto& f : dense_smith(d, rs.size(), cs.size())) out.push_back(to_big(f));
  return out;
}

}  // namespace detail

/// Nonzero invariant factors, in divisibility order.
inline std::vector<BigInt> invariant_factors(const IntMatrix& m) {
  std::vector<BigInt> out;
  try {
    out = detail::invariant_factors_impl<Checked>(m);
  } catch (const OverflowError&) {
    out = detail::invariant_factors_impl<BigInt>(m);
  }
  std::sort(out.begin(), out.end());
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] % out[i - 1] != 0) throw std::logic_error("invariant factors do not divide successively");
  return out;
}

struct SmithDecomposition {
  Dense<BigInt> U;  // rows x rows
  Dense<BigInt> D;  // rows x cols, diagonal
  Dense<BigInt> V;  // cols x cols
  std::vector<BigInt> factors;
};

/// Dense Smith normal form with transforms, U * A * V = D.
inline SmithDecomposition smith_with_transforms(const IntMatrix& m) {
  SmithDecomposition s;
  s.D = to_dense<BigInt>(m);
  s.U = to_dense<BigInt>(IntMatrix::identity(m.rows));
  s.V = to_dense<BigInt>(IntMatrix::identity(m.cols));
  s.factors = detail::dense_smith(s.D, m.rows, m.cols, &s.U, &s.V);
  return s;
}

inline Dense<BigInt> dense_multiply(const Dense<BigInt>& a, const Dense<BigInt>& b, std::size_t inner) {
  std::size_t r = a.size(), c = b.empty() ? 0 : b[0].size();
  Dense<BigInt> out(r, std::vector<BigInt>(c, BigInt(0)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (!a[i][k].is_zero())
        for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

/// Bareiss fraction-free determinant.
inline BigInt determinant(Dense<BigInt> a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace slist
