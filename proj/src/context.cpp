#include "qpainleve/context.hpp"

#include <cmath>

namespace qpainleve {

SeriesPolicy SeriesPolicy::for_precision(unsigned bits) {
  SeriesPolicy p;
  if (bits > 53) {
    p.trunc_tol = std::min(p.trunc_tol, std::ldexp(1.0, -static_cast<int>(bits) - 8));
    p.max_index = 256;
  }
  return p;
}

template <class R>
QContext<R>::QContext(Complex<R> tau, SeriesPolicy policy) : tau_(std::move(tau)), policy_(policy) {
  if (!(tau_.im() > 0)) throw DomainError("Im(tau) must be positive");
  if (!(policy_.trunc_tol > 0.0)) throw DomainError("trunc_tol must be positive");
  if (policy_.max_index < 8) throw DomainError("max_index must be at least 8");
  q_ = epow(Complex<R>(R(1)));
}

template <class R>
Complex<R> QContext<R>::epow(const Complex<R>& w) const {
  return exp(Complex<R>::i() * pi<R>() * tau_ * w);
}

template <class R>
double QContext<R>::lattice_distance(const Complex<R>& z) const {
  using std::round;
  R s = round(z.im() / tau_.im());
  Complex<R> w = z - Complex<R>(s) * tau_;
  return magnitude(exp(Complex<R>(R(0), 2 * pi<R>()) * w) - Complex<R>(R(1)));
}

template class QContext<double>;
template class QContext<Mp>;

}  // namespace qpainleve
