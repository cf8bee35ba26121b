#include "qpainleve/scalar.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <vector>

#include "qpainleve/matrix.hpp"

namespace qpainleve {

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Mp::default_precision()) {
  // Boost converts digits10 back to bits by rounding up, so the effective
  // precision never falls below the request.
  unsigned digits10 = static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
  Mp::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Mp::default_precision(saved_digits10_); }

template <>
double gauss_E<double>(const double& x) {
  return std::erf(std::sqrt(pi<double>()) * x);
}

template <>
Mp gauss_E<Mp>(const Mp& x) {
  return boost::math::erf(sqrt(pi<Mp>()) * x);
}

template <>
double gauss_E_complement<double>(const double& x) {
  return std::erfc(std::sqrt(pi<double>()) * x);
}

template <>
Mp gauss_E_complement<Mp>(const Mp& x) {
  return boost::math::erfc(sqrt(pi<Mp>()) * x);
}

template <class R>
void Matrix<R>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap(entries_[a * cols_ + c], entries_[b * cols_ + c]);
}

template <class R>
Complex<R> det(Matrix<R> m) {
  if (!m.square()) throw ShapeError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Complex<R> result(R(1));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    R best = abs(m(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      R mag = abs(m(r, col));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0) return Complex<R>();
    if (pivot != col) {
      m.swap_rows(pivot, col);
      result = -result;
    }
    const Complex<R> p = m(col, col);
    result *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      Complex<R> factor = m(r, col) / p;
      if (factor == Complex<R>()) continue;
      for (std::size_t c = col + 1; c < n; ++c) m(r, c) -= factor * m(col, c);
    }
  }
  return result;
}

template class Matrix<double>;
template class Matrix<Mp>;
template <class R>
double cancellation_bits(const Matrix<R>& m, const Complex<R>& d) {
  // Hadamard's bound after equilibrating rows, then columns, by their largest
  // entry, in log₂ so extended-range values survive.
  const std::size_t n = m.rows();
  if (n == 0) return 0.0;
  const double none = -std::numeric_limits<double>::infinity();
  std::vector<double> lg(n * m.cols());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) lg[r * m.cols() + c] = log2_magnitude(m(r, c));
  double shift = 0.0;
  std::vector<double> col(m.cols(), none);
  for (std::size_t r = 0; r < n; ++r) {
    double top = none;
    for (std::size_t c = 0; c < m.cols(); ++c) top = std::max(top, lg[r * m.cols() + c]);
    if (top == none) return 0.0;  // a zero row: the determinant is exactly zero
    shift += top;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      lg[r * m.cols() + c] -= top;
      col[c] = std::max(col[c], lg[r * m.cols() + c]);
    }
  }
  for (double c : col) shift += c;
  double bound = shift;
  for (std::size_t r = 0; r < n; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) sum += std::exp2(2 * (lg[r * m.cols() + c] - col[c]));
    bound += std::log2(sum) / 2;
  }
  const double mag = log2_magnitude(d);
  if (mag == none) return std::numeric_limits<double>::infinity();
  return std::max(0.0, bound - mag);
}

template Complex<double> det(Matrix<double>);
template Complex<Mp> det(Matrix<Mp>);
template double cancellation_bits(const Matrix<double>&, const Complex<double>&);
template double cancellation_bits(const Matrix<Mp>&, const Complex<Mp>&);

}  // namespace qpainleve
