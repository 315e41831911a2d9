#include "hopfwave/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hopfwave/errors.hpp"

namespace hopfwave {

namespace {

constexpr std::size_t kStencil = 6;

double lagrange(std::size_t j, double s) {
  double p = 1.0;
  for (std::size_t l = 0; l < kStencil; ++l) {
    if (l == j) continue;
    p *= (s - static_cast<double>(l)) / (static_cast<double>(j) - static_cast<double>(l));
  }
  return p;
}

// weights[o][j]: integral over [o, o+1] of the j-th Lagrange basis on nodes 0..5.
struct IntervalWeights {
  std::array<std::array<double, kStencil>, kStencil - 1> w{};

  IntervalWeights() {
    // 3-point Gauss-Legendre is exact for the degree-5 basis.
    const double g = std::sqrt(3.0 / 5.0);
    const std::array<double, 3> nodes = {-g, 0.0, g};
    const std::array<double, 3> weights = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    for (std::size_t o = 0; o < kStencil - 1; ++o) {
      for (std::size_t j = 0; j < kStencil; ++j) {
        double acc = 0.0;
        for (std::size_t q = 0; q < 3; ++q) acc += 0.5 * weights[q] * lagrange(j, static_cast<double>(o) + 0.5 + 0.5 * nodes[q]);
        w[o][j] = acc;
      }
    }
  }
};

const IntervalWeights& interval_weights() {
  static const IntervalWeights table;
  return table;
}

std::size_t stencil_start(std::size_t interval, std::size_t n) {
  const std::size_t centred = interval >= 2 ? interval - 2 : 0;
  return std::min(centred, n - kStencil);
}

}  // namespace

UniformGrid::UniformGrid(std::size_t intervals) : M(intervals) {
  if (intervals < kStencil - 1) throw InvalidArgument("grid needs at least 5 intervals");
}

std::vector<double> UniformGrid::nodes() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x(i);
  return out;
}

template <class T>
std::vector<T> cumulative_integral(std::span<const T> f, double h) {
  const std::size_t n = f.size();
  if (n < kStencil) throw InvalidArgument("cumulative_integral needs at least 6 nodes");
  const auto& W = interval_weights().w;
  std::vector<T> out(n);
  out[0] = T{};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t s = stencil_start(i, n);
    const auto& w = W[i - s];
    T acc{};
    for (std::size_t j = 0; j < kStencil; ++j) acc += w[j] * f[s + j];
    out[i + 1] = out[i] + h * acc;
  }
  return out;
}

template <class T>
T integrate(std::span<const T> f, double h) {
  return cumulative_integral<T>(f, h).back();
}

template <class T>
T interpolate(std::span<const T> values, double h, double x) {
  const std::size_t n = values.size();
  if (n < kStencil) throw InvalidArgument("interpolate needs at least 6 nodes");
  const double pos = x / h;
  const double last = static_cast<double>(n - 1);
  const double clamped = std::clamp(pos, 0.0, last);
  std::size_t interval = static_cast<std::size_t>(std::floor(clamped));
  if (interval >= n - 1) interval = n - 2;
  const std::size_t s = stencil_start(interval, n);
  const double local = pos - static_cast<double>(s);
  T acc{};
  for (std::size_t j = 0; j < kStencil; ++j) acc += lagrange(j, local) * values[s + j];
  return acc;
}

template std::vector<double> cumulative_integral<double>(std::span<const double>, double);
template std::vector<cplx> cumulative_integral<cplx>(std::span<const cplx>, double);
template double integrate<double>(std::span<const double>, double);
template cplx integrate<cplx>(std::span<const cplx>, double);
template double interpolate<double>(std::span<const double>, double, double);
template cplx interpolate<cplx>(std::span<const cplx>, double, double);

namespace {

template <class T>
std::vector<T> resample_impl(const std::vector<T>& values, std::size_t new_intervals) {
  const std::size_t old_intervals = values.size() - 1;
  if (old_intervals == new_intervals) return values;
  std::vector<T> out(new_intervals + 1);
  if (old_intervals % new_intervals == 0) {
    const std::size_t stride = old_intervals / new_intervals;
    for (std::size_t i = 0; i <= new_intervals; ++i) out[i] = values[i * stride];
    return out;
  }
  const double h = 1.0 / static_cast<double>(old_intervals);
  for (std::size_t i = 0; i <= new_intervals; ++i)
    out[i] = interpolate<T>(std::span<const T>(values), h, static_cast<double>(i) / static_cast<double>(new_intervals));
  return out;
}

}  // namespace

std::vector<cplx> resample(const std::vector<cplx>& values, std::size_t new_intervals) {
  return resample_impl(values, new_intervals);
}

std::vector<double> resample(const std::vector<double>& values, std::size_t new_intervals) {
  return resample_impl(values, new_intervals);
}

}  // namespace hopfwave
