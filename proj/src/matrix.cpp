#include "solenoid/matrix.hpp"

#include <stdexcept>
#include <utility>

#include "solenoid/rational.hpp"

namespace solenoid {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& d) {
  const int n = static_cast<int>(d.size());
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, int rows) {
  IntMatrix m(rows, static_cast<int>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(static_cast<int>(c), columns[c]);
  return m;
}

IntVector IntMatrix::column(int c) const {
  IntVector v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void IntMatrix::set_column(int c, const IntVector& v) {
  if (static_cast<int>(v.size()) != rows_) throw std::invalid_argument("column length mismatch");
  for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

void IntMatrix::swap_columns(int a, int b) {
  if (a == b) return;
  for (int r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_column_multiple(int target, int source, std::int64_t factor) {
  if (factor == 0) return;
  for (int r = 0; r < rows_; ++r)
    (*this)(r, target) = checked::add((*this)(r, target), checked::mul(factor, (*this)(r, source)));
}

void IntMatrix::negate_column(int c) {
  for (int r = 0; r < rows_; ++r) (*this)(r, c) = checked::sub(0, (*this)(r, c));
}

std::int64_t IntMatrix::determinant() const {
  if (!is_square()) throw std::invalid_argument("determinant of non-square matrix");
  // Fraction-free Bareiss elimination.
  const int n = rows_;
  if (n == 0) return 1;
  std::vector<__int128> a(data_.begin(), data_.end());
  auto at = [&](int r, int c) -> __int128& { return a[static_cast<std::size_t>(r) * n + c]; };
  int sign = 1;
  __int128 prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (at(r, k) != 0) { swap_row = r; break; }
      if (swap_row < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(at(k, c), at(swap_row, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  const __int128 det = sign * at(n - 1, n - 1);
  if (det > INT64_MAX || det < INT64_MIN) throw ResourceError("determinant overflow");
  return static_cast<std::int64_t>(det);
}

bool IntMatrix::is_identity() const { return is_square() && *this == identity(rows_); }

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  IntMatrix m(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols_; ++j) m(i, j) = checked::add(m(i, j), checked::mul(aik, b(k, j)));
    }
  return m;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols_ != static_cast<int>(v.size())) throw std::invalid_argument("matrix-vector dimension mismatch");
  IntVector r(a.rows_, 0);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) r[i] = checked::add(r[i], checked::mul(a(i, k), v[k]));
  return r;
}

std::string IntMatrix::str() const {
  std::string s;
  for (int r = 0; r < rows_; ++r) {
    if (r > 0) s += " / ";
    for (int c = 0; c < cols_; ++c) {
      if (c > 0) s += ' ';
      s += std::to_string((*this)(r, c));
    }
  }
  return s;
}

IntVector add(const IntVector& a, const IntVector& b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked::add(a[i], b[i]);
  return r;
}

IntVector sub(const IntVector& a, const IntVector& b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked::sub(a[i], b[i]);
  return r;
}

IntVector negate(const IntVector& a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked::sub(0, a[i]);
  return r;
}

bool is_zero(const IntVector& a) {
  for (auto x : a)
    if (x != 0) return false;
  return true;
}

IntMatrix matrix_power(const IntMatrix& m, int exponent) {
  IntMatrix r = IntMatrix::identity(m.rows());
  for (int i = 0; i < exponent; ++i) r = r * m;
  return r;
}

}  // namespace solenoid
