#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "exdyn/errors.hpp"
#include "exdyn/rational.hpp"

namespace exdyn {

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

/// Equality used by every identity check: exact for Rational, relative
/// tolerance for double (scaled by max(1, |a|, |b|)).
inline bool nearly_equal(const Rational& a, const Rational& b, double /*tolerance*/) { return a == b; }
inline bool nearly_equal(double a, double b, double tolerance) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tolerance * scale;
}

/// Row-compressed sparse matrix. Rows keep their entries sorted by column
/// and never store explicit zeros.
template <class T>
class SparseMatrix {
 public:
  using Entry = std::pair<std::size_t, T>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, T(1));
    return m;
  }

  std::size_t rows() const noexcept { return data_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  std::span<const Entry> row(std::size_t r) const { return data_.at(r); }

  /// Accumulates `value` into entry (r, c).
  void add(std::size_t r, std::size_t c, const T& value) {
    if (r >= rows() || c >= cols_) throw ShapeError("matrix index out of range");
    if (is_zero(value)) return;
    auto& row_entries = data_[r];
    auto it = std::lower_bound(row_entries.begin(), row_entries.end(), c,
                               [](const Entry& e, std::size_t col) { return e.first < col; });
    if (it != row_entries.end() && it->first == c) {
      it->second += value;
      if (is_zero(it->second)) row_entries.erase(it);
    } else {
      row_entries.insert(it, Entry(c, value));
    }
  }

  T at(std::size_t r, std::size_t c) const {
    const auto& row_entries = data_.at(r);
    auto it = std::lower_bound(row_entries.begin(), row_entries.end(), c,
                               [](const Entry& e, std::size_t col) { return e.first < col; });
    if (it != row_entries.end() && it->first == c) return it->second;
    return T(0);
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  T row_sum(std::size_t r) const {
    T s(0);
    for (const auto& [c, v] : data_.at(r)) s += v;
    return s;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r) {
      for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
    }
    return t;
  }

  SparseMatrix& operator*=(const T& scalar) {
    if (is_zero(scalar)) {
      for (auto& r : data_) r.clear();
      return *this;
    }
    for (auto& r : data_) {
      for (auto& e : r) e.second *= scalar;
    }
    return *this;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matrix product dimension mismatch");
    SparseMatrix out(a.rows(), b.cols());
    std::vector<T> acc(b.cols(), T(0));
    std::vector<char> touched(b.cols(), 0);
    std::vector<std::size_t> cols_used;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      cols_used.clear();
      for (const auto& [k, av] : a.data_[r]) {
        for (const auto& [c, bv] : b.data_[k]) {
          if (!touched[c]) {
            touched[c] = 1;
            cols_used.push_back(c);
          }
          acc[c] += av * bv;
        }
      }
      std::sort(cols_used.begin(), cols_used.end());
      auto& dst = out.data_[r];
      for (std::size_t c : cols_used) {
        if (!is_zero(acc[c])) dst.emplace_back(c, acc[c]);
        acc[c] = T(0);
        touched[c] = 0;
      }
    }
    return out;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, T(1)); }
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, T(-1)); }

  friend SparseMatrix operator*(const T& scalar, SparseMatrix m) {
    m *= scalar;
    return m;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<T> apply(std::span<const T> x) const {
    if (x.size() != cols_) throw ShapeError("matrix-vector dimension mismatch");
    std::vector<T> y(rows(), T(0));
    for (std::size_t r = 0; r < rows(); ++r) {
      for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
    }
    return y;
  }

  template <class U>
  SparseMatrix<U> cast(U (*convert)(const T&)) const {
    SparseMatrix<U> out(rows(), cols_);
    for (std::size_t r = 0; r < rows(); ++r) {
      for (const auto& [c, v] : data_[r]) out.add(r, c, convert(v));
    }
    return out;
  }

 private:
  static SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, const T& sign) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix sum dimension mismatch");
    SparseMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      const auto& x = a.data_[r];
      const auto& y = b.data_[r];
      auto& dst = out.data_[r];
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
          dst.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
          dst.emplace_back(y[j].first, sign * y[j].second);
          ++j;
        } else {
          T v = x[i].second + sign * y[j].second;
          if (!is_zero(v)) dst.emplace_back(x[i].first, v);
          ++i;
          ++j;
        }
      }
    }
    return out;
  }

  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> data_;
};

/// First entry (row, col) where the two matrices differ beyond `tolerance`.
template <class T>
struct MatrixDifference {
  std::size_t row;
  std::size_t col;
  T lhs;
  T rhs;
};

template <class T>
std::optional<MatrixDifference<T>> first_difference(const SparseMatrix<T>& a, const SparseMatrix<T>& b,
                                                    double tolerance = 0.0) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("cannot compare matrices of different shape");
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto x = a.row(r);
    auto y = b.row(r);
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() || j < y.size()) {
      std::size_t c;
      T u(0);
      T v(0);
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        c = x[i].first;
        u = x[i++].second;
      } else if (i == x.size() || y[j].first < x[i].first) {
        c = y[j].first;
        v = y[j++].second;
      } else {
        c = x[i].first;
        u = x[i++].second;
        v = y[j++].second;
      }
      if (!nearly_equal(u, v, tolerance)) return MatrixDifference<T>{r, c, u, v};
    }
  }
  return std::nullopt;
}

/// Dense exact matrix used by the small Gaussian-elimination solves.
using DenseMatrix = std::vector<std::vector<Rational>>;

/// Basis of the right null space {x : A x = 0}, by exact row reduction.
std::vector<std::vector<Rational>> null_space(DenseMatrix a, std::size_t cols);

}  // namespace exdyn
