#pragma once

#include <cstddef>
#include <vector>

#include "qpainleve/scalar.hpp"

namespace qpainleve {

/// Dense row-major complex matrix. Only what the determinant identities need.
template <class R>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex<R>& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex<R>& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  const std::vector<Complex<R>>& entries() const { return entries_; }

  void swap_rows(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex<R>> entries_;
};

/// Determinant by Gaussian elimination with partial pivoting on maximum
/// modulus (ties go to the lowest row). A 0x0 matrix has determinant 1.
/// Near-singular input is not an error; the computed value is returned.
template <class R>
Complex<R> det(Matrix<R> m);

/// log₂ of Hadamard's bound Π‖row‖₂ over |d|: an upper estimate of the bits
/// lost to cancellation in a determinant d of m. Infinite when d = 0.
template <class R>
double cancellation_bits(const Matrix<R>& m, const Complex<R>& d);

}  // namespace qpainleve
