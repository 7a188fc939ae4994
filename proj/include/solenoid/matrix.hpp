#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace solenoid {

using IntVector = std::vector<std::int64_t>;

/// Dense row-major integer matrix. Small (dimension 1..4 in practice) and
/// value-semantic; all arithmetic is overflow-checked.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(int n);
  static IntMatrix diagonal(const IntVector& d);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, int rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  std::int64_t& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  std::int64_t operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  IntVector column(int c) const;
  void set_column(int c, const IntVector& v);
  void swap_columns(int a, int b);
  /// col[target] += factor * col[source]
  void add_column_multiple(int target, int source, std::int64_t factor);
  void negate_column(int c);

  std::int64_t determinant() const;
  bool is_identity() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;
  friend auto operator<=>(const IntMatrix& a, const IntMatrix& b) {
    return a.data_ <=> b.data_;
  }

  const std::vector<std::int64_t>& data() const { return data_; }

  /// Rows separated by " / ", e.g. "3 0 / 0 35".
  std::string str() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> data_;
};

IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector negate(const IntVector& a);
bool is_zero(const IntVector& a);

IntMatrix matrix_power(const IntMatrix& m, int exponent);

}  // namespace solenoid
