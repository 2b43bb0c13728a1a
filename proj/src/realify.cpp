#include "rmlab/realify.hpp"

namespace rmlab {

RealVector hat(const ComplexVector& v) {
  const Eigen::Index n = v.size();
  RealVector out(2 * n);
  out.head(n) = v.real();
  out.tail(n) = v.imag();
  return out;
}

ComplexVector complexify(const RealVector& realified) {
  require(realified.size() % 2 == 0, "realified vector must have even length");
  const Eigen::Index n = realified.size() / 2;
  ComplexVector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = Complex(realified(k), realified(n + k));
  return v;
}

Point2 bracket_apply(const ComplexVector& v, const ComplexVector& a) {
  require(v.size() == a.size(), "bracket_apply: dimension mismatch");
  const Eigen::Index n = v.size();
  double first = 0.0, second = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    first += v(k).real() * a(k).real() - v(k).imag() * a(k).imag();
    second += v(k).imag() * a(k).real() + v(k).real() * a(k).imag();
  }
  return {first, second};
}

RealVector bracket_transpose_apply(const ComplexVector& v, const Point2& theta) {
  const Eigen::Index n = v.size();
  RealVector out(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double re = v(k).real(), im = v(k).imag();
    out(k) = theta(0) * re + theta(1) * im;
    out(n + k) = -theta(0) * im + theta(1) * re;
  }
  return out;
}

std::pair<Point2, IntVector> symmetry_swap(const Point2& theta, const IntVector& p) {
  require(p.size() % 2 == 0, "symmetry_swap: lattice vector must have even length");
  const Eigen::Index n = p.size() / 2;
  IntVector swapped(p.size());
  swapped.head(n) = -p.tail(n);
  swapped.tail(n) = p.head(n);
  return {Point2(-theta(1), theta(0)), std::move(swapped)};
}

}  // namespace rmlab
