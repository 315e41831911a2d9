#pragma once

// Uniform-grid quadrature on [0, 1].
//
// Cumulative integrals integrate, interval by interval, the degree-5
// interpolant through the six nearest nodes (global order six).  The same
// stencils back `interpolate`, so kernel tables and their queries share one
// accuracy class.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hopfwave {

using cplx = std::complex<double>;

struct UniformGrid {
  std::size_t M = 0;  // number of intervals

  UniformGrid() = default;
  explicit UniformGrid(std::size_t intervals);

  std::size_t size() const { return M + 1; }
  double h() const { return 1.0 / static_cast<double>(M); }
  double x(std::size_t i) const { return static_cast<double>(i) / static_cast<double>(M); }
  std::vector<double> nodes() const;
};

/// F[i] = integral of f from x_0 to x_i; requires at least 6 nodes.
template <class T>
std::vector<T> cumulative_integral(std::span<const T> f, double h);

/// Integral of f over the whole grid.
template <class T>
T integrate(std::span<const T> f, double h);

/// Local degree-5 interpolation of nodal values at x in [0, (n-1) h].
template <class T>
T interpolate(std::span<const T> values, double h, double x);

/// Convenience overloads for vectors.
inline std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
  return cumulative_integral<double>(std::span<const double>(f), h);
}
inline std::vector<cplx> cumulative_integral(const std::vector<cplx>& f, double h) {
  return cumulative_integral<cplx>(std::span<const cplx>(f), h);
}
inline double integrate(const std::vector<double>& f, double h) {
  return integrate<double>(std::span<const double>(f), h);
}
inline cplx integrate(const std::vector<cplx>& f, double h) {
  return integrate<cplx>(std::span<const cplx>(f), h);
}
inline double interpolate(const std::vector<double>& v, double h, double x) {
  return interpolate<double>(std::span<const double>(v), h, x);
}
inline cplx interpolate(const std::vector<cplx>& v, double h, double x) {
  return interpolate<cplx>(std::span<const cplx>(v), h, x);
}

/// Resamples nodal values from one uniform grid on [0, 1] to another.
std::vector<cplx> resample(const std::vector<cplx>& values, std::size_t new_intervals);
std::vector<double> resample(const std::vector<double>& values, std::size_t new_intervals);

}  // namespace hopfwave
