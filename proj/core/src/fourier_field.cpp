#include "hopfwave/fourier_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hopfwave/errors.hpp"

namespace hopfwave {

FourierField::FourierField(int N, std::size_t M)
    : N_(N), M_(M), data_(2 * static_cast<std::size_t>(N + 1) * (M + 1)) {
  if (N < 0) throw InvalidArgument("FourierField: negative harmonic count");
}

cplx FourierField::coefficient(int j, int k, std::size_t m) const {
  if (k >= 0) return (*this)(j, k, m);
  return std::conj((*this)(j, -k, m));
}

void FourierField::enforce_symmetry() {
  for (int j = 0; j < 2; ++j)
    for (auto& c : row(j, 0)) c = cplx(c.real(), 0.0);
}

bool FourierField::is_symmetric(double tol) const {
  for (int j = 0; j < 2; ++j)
    for (const auto& c : row(j, 0))
      if (std::abs(c.imag()) > tol) return false;
  return true;
}

double FourierField::max_abs() const {
  double m = 0.0;
  for (const auto& c : data_) m = std::max(m, std::abs(c));
  return m;
}

FourierField& FourierField::operator+=(const FourierField& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

FourierField& FourierField::operator-=(const FourierField& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

FourierField& FourierField::operator*=(double s) {
  for (auto& c : data_) c *= s;
  return *this;
}

void FourierField::pack(std::span<double> out) const {
  std::size_t p = 0;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k <= N_; ++k) {
      for (const auto& c : row(j, k)) {
        out[p++] = c.real();
        if (k > 0) out[p++] = c.imag();
      }
    }
  }
}

FourierField FourierField::unpack(int N, std::size_t M, std::span<const double> in) {
  FourierField f(N, M);
  std::size_t p = 0;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k <= N; ++k) {
      for (auto& c : f.row(j, k)) {
        const double re = in[p++];
        const double im = k > 0 ? in[p++] : 0.0;
        c = cplx(re, im);
      }
    }
  }
  return f;
}

FourierField FourierField::shifted(double phi) const {
  FourierField out = *this;
  for (int j = 0; j < 2; ++j)
    for (int k = 1; k <= N_; ++k) {
      const cplx ph = std::polar(1.0, k * phi);
      for (auto& c : out.row(j, k)) c *= ph;
    }
  return out;
}

TimeGrid::TimeGrid(int N, std::size_t samples) : N_(N), Nt_(samples), table_(samples * static_cast<std::size_t>(N + 1)) {
  if (samples < 2 * static_cast<std::size_t>(N) + 1) throw InvalidArgument("TimeGrid: too few samples");
  for (std::size_t n = 0; n < Nt_; ++n)
    for (int k = 0; k <= N_; ++k) table_[n * (N_ + 1) + k] = std::polar(1.0, k * time(n));
}

double TimeGrid::time(std::size_t n) const { return 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(Nt_); }

void TimeGrid::synthesize(std::span<const cplx> coeffs, std::span<double> values) const {
  const std::size_t stride = static_cast<std::size_t>(N_ + 1);
  for (std::size_t n = 0; n < Nt_; ++n) {
    const cplx* e = table_.data() + n * stride;
    double acc = 0.0;
    for (int k = 1; k <= N_; ++k) acc += coeffs[k].real() * e[k].real() - coeffs[k].imag() * e[k].imag();
    values[n] = coeffs[0].real() + 2.0 * acc;
  }
}

void TimeGrid::analyze(std::span<const double> values, std::span<cplx> coeffs) const {
  const std::size_t stride = static_cast<std::size_t>(N_ + 1);
  for (int k = 0; k <= N_; ++k) coeffs[k] = 0.0;
  for (std::size_t n = 0; n < Nt_; ++n) {
    const cplx* e = table_.data() + n * stride;
    for (int k = 0; k <= N_; ++k) coeffs[k] += values[n] * std::conj(e[k]);
  }
  const double inv = 1.0 / static_cast<double>(Nt_);
  for (int k = 0; k <= N_; ++k) coeffs[k] *= inv;
  coeffs[0] = cplx(coeffs[0].real(), 0.0);
}

}  // namespace hopfwave
