#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "exdyn/errors.hpp"
#include "exdyn/matrix.hpp"
#include "exdyn/statespace.hpp"

namespace exdyn {

/// A linear operator on functions, stored as one matrix per row sector.
///
/// Operators act on the left: (A f)(x) = sum_y A(x, y) f(y). The block for
/// row sector N has rows indexed by the states of sector N of the row
/// space and columns indexed by sector N - shift of the column space. So a
/// mass-conserving operator has shift 0, K^+ (which reads f at n+1) has
/// shift -1 and K^- has shift +1. For a stochastic operator A(x, y) is the
/// probability of the move x -> y.
///
/// Blocks whose column sector lies beyond the truncation are simply absent;
/// every check reports the sectors it could not evaluate.
template <class T>
class BasicSectorOperator {
 public:
  using Matrix = SparseMatrix<T>;

  BasicSectorOperator() = default;
  BasicSectorOperator(SectorsPtr rows, SectorsPtr cols, int shift) : rows_(std::move(rows)), cols_(std::move(cols)), shift_(shift) {}

  /// Operator with every block that fits in both truncations, all zero.
  static BasicSectorOperator zeros(SectorsPtr rows, SectorsPtr cols, int shift) {
    BasicSectorOperator op(rows, cols, shift);
    for (long n = 0; n <= rows->nmax(); ++n) {
      const long m = n - shift;
      if (!cols->contains(m)) continue;
      op.blocks_.emplace(n, Matrix(rows->at(n).size(), cols->at(m).size()));
    }
    return op;
  }

  /// Builds an operator from its action on single rows: `action(x, emit)`
  /// calls emit(y, coefficient) for every column state y it reads.
  /// A nonzero coefficient on a state outside the column space throws
  /// CapacityError.
  static BasicSectorOperator from_action(
      SectorsPtr rows, SectorsPtr cols, int shift,
      const std::function<void(const State&, const std::function<void(const State&, const T&)>&)>& action) {
    BasicSectorOperator op = zeros(rows, cols, shift);
    for (auto& [n, block] : op.blocks_) {
      const Sector& row_sector = rows->at(n);
      const Sector& col_sector = cols->at(n - shift);
      for (std::size_t i = 0; i < row_sector.size(); ++i) {
        action(row_sector.state(i), [&](const State& y, const T& coefficient) {
          if (is_zero(coefficient)) return;
          auto j = col_sector.find(y);
          if (!j) {
            throw CapacityError("operator reads state " + to_string(y) + " outside " + to_string(cols->space()) +
                                " from " + to_string(row_sector.state(i)));
          }
          block.add(i, *j, coefficient);
        });
      }
    }
    return op;
  }

  static BasicSectorOperator identity(SectorsPtr sectors) {
    BasicSectorOperator op(sectors, sectors, 0);
    for (long n = 0; n <= sectors->nmax(); ++n) op.blocks_.emplace(n, Matrix::identity(sectors->at(n).size()));
    return op;
  }

  const SectorsPtr& rows() const noexcept { return rows_; }
  const SectorsPtr& cols() const noexcept { return cols_; }
  int shift() const noexcept { return shift_; }

  bool has_block(long n) const { return blocks_.count(n) != 0; }
  const Matrix& block(long n) const {
    auto it = blocks_.find(n);
    if (it == blocks_.end()) throw ShapeError("no block for sector " + std::to_string(n));
    return it->second;
  }
  Matrix& block(long n) {
    auto it = blocks_.find(n);
    if (it == blocks_.end()) throw ShapeError("no block for sector " + std::to_string(n));
    return it->second;
  }
  void set_block(long n, Matrix m) { blocks_[n] = std::move(m); }

  std::vector<long> sectors() const {
    std::vector<long> out;
    for (const auto& [n, _] : blocks_) out.push_back(n);
    return out;
  }
  const std::map<long, Matrix>& blocks() const noexcept { return blocks_; }

  /// Row sectors of the row space that have no block.
  std::vector<long> missing_sectors() const {
    std::vector<long> out;
    for (long n = 0; n <= rows_->nmax(); ++n) {
      if (!has_block(n)) out.push_back(n);
    }
    return out;
  }

  /// Entry for row state x and column state y (zero if absent).
  T entry(const State& x, const State& y) const {
    long n = 0;
    for (long v : x) n += v;
    if (!has_block(n)) throw ShapeError("no block for state " + to_string(x));
    const auto i = rows_->at(n).index(x);
    auto j = cols_->at(n - shift_).find(y);
    if (!j) return T(0);
    return block(n).at(i, *j);
  }

  /// Composition (A B) f = A (B f); defined on row sectors where both
  /// factors have the needed blocks.
  friend BasicSectorOperator operator*(const BasicSectorOperator& a, const BasicSectorOperator& b) {
    if (!(a.cols_->space() == b.rows_->space())) {
      throw ShapeError("cannot compose operators on " + to_string(a.cols_->space()) + " and " +
                       to_string(b.rows_->space()));
    }
    BasicSectorOperator out(a.rows_, b.cols_, a.shift_ + b.shift_);
    for (const auto& [n, block] : a.blocks_) {
      auto it = b.blocks_.find(n - a.shift_);
      if (it != b.blocks_.end()) {
        out.blocks_.emplace(n, block * it->second);
        continue;
      }
      // A reads an empty (negative) sector, so AB is a zero block there.
      const long m = n - a.shift_;
      const long col_sector = m - b.shift_;
      if (m < 0 && b.cols_->contains(col_sector)) {
        out.blocks_.emplace(n, Matrix(block.rows(), b.cols_->at(col_sector).size()));
      }
    }
    return out;
  }

  friend BasicSectorOperator operator+(const BasicSectorOperator& a, const BasicSectorOperator& b) {
    return combine(a, b, T(1));
  }
  friend BasicSectorOperator operator-(const BasicSectorOperator& a, const BasicSectorOperator& b) {
    return combine(a, b, T(-1));
  }
  friend BasicSectorOperator operator*(const T& scalar, BasicSectorOperator op) {
    for (auto& [n, block] : op.blocks_) block *= scalar;
    return op;
  }

  template <class U>
  BasicSectorOperator<U> cast(U (*convert)(const T&)) const {
    BasicSectorOperator<U> out(rows_, cols_, shift_);
    for (const auto& [n, block] : blocks_) out.set_block(n, block.cast(convert));
    return out;
  }

 private:
  static BasicSectorOperator combine(const BasicSectorOperator& a, const BasicSectorOperator& b, const T& sign) {
    if (!(a.rows_->space() == b.rows_->space()) || !(a.cols_->space() == b.cols_->space())) {
      throw ShapeError("cannot add operators on different state spaces (" + to_string(a.rows_->space()) + " vs " +
                       to_string(b.rows_->space()) + ")");
    }
    if (a.shift_ != b.shift_) throw ShapeError("cannot add operators with different sector shifts");
    BasicSectorOperator out(a.rows_, a.cols_, a.shift_);
    for (const auto& [n, block] : a.blocks_) {
      auto it = b.blocks_.find(n);
      if (it == b.blocks_.end()) continue;
      out.blocks_.emplace(n, sign == T(1) ? block + it->second : block - it->second);
    }
    return out;
  }

  SectorsPtr rows_;
  SectorsPtr cols_;
  int shift_ = 0;
  std::map<long, Matrix> blocks_;
};

using SectorOperator = BasicSectorOperator<Rational>;
using FloatSectorOperator = BasicSectorOperator<double>;

inline double rational_to_double(const Rational& x) { return x.get_d(); }

inline FloatSectorOperator to_float(const SectorOperator& op) { return op.cast<double>(&rational_to_double); }

/// Result of a commutator: the operator on the sectors where both orders
/// are defined, and the row sectors that had to be left out.
template <class T>
struct CommutatorResult {
  BasicSectorOperator<T> value;
  std::vector<long> excluded;
};

/// [A, B] = AB - BA. Throws ShapeError if no sector supports both orders.
template <class T>
CommutatorResult<T> commutator(const BasicSectorOperator<T>& a, const BasicSectorOperator<T>& b) {
  auto value = a * b - b * a;
  if (value.blocks().empty()) throw ShapeError("commutator has no sector where both products are defined");
  return {value, value.missing_sectors()};
}

}  // namespace exdyn
