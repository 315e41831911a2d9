#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hopfwave/quadrature.hpp"

namespace hopfwave {

/// Real 2pi-periodic field v = (v_1, v_2)(t, x) stored as Fourier coefficients
/// in t on a uniform x grid:  v_j(t, x_m) = sum_{|k| <= N} c_{j,k,m} e^{ikt}.
///
/// Only k = 0..N is stored; c_{j,-k,m} = conj(c_{j,k,m}).
class FourierField {
 public:
  FourierField() = default;
  FourierField(int N, std::size_t M);

  int harmonics() const { return N_; }
  std::size_t intervals() const { return M_; }
  std::size_t nodes() const { return M_ + 1; }

  cplx& operator()(int j, int k, std::size_t m) { return data_[index(j, k, m)]; }
  const cplx& operator()(int j, int k, std::size_t m) const { return data_[index(j, k, m)]; }

  /// Coefficient for any |k| <= N.
  cplx coefficient(int j, int k, std::size_t m) const;

  std::span<cplx> row(int j, int k) { return {data_.data() + index(j, k, 0), nodes()}; }
  std::span<const cplx> row(int j, int k) const { return {data_.data() + index(j, k, 0), nodes()}; }

  void enforce_symmetry();
  bool is_symmetric(double tol = 0.0) const;
  double max_abs() const;

  FourierField& operator+=(const FourierField& o);
  FourierField& operator-=(const FourierField& o);
  FourierField& operator*=(double s);
  friend FourierField operator+(FourierField a, const FourierField& b) { return a += b; }
  friend FourierField operator-(FourierField a, const FourierField& b) { return a -= b; }
  friend FourierField operator*(double s, FourierField a) { return a *= s; }

  /// Real unknowns: k = 0 contributes the real part only, k >= 1 real and imaginary parts.
  static std::size_t packed_size(int N, std::size_t M) { return 2 * (M + 1) * (2 * static_cast<std::size_t>(N) + 1); }
  void pack(std::span<double> out) const;
  static FourierField unpack(int N, std::size_t M, std::span<const double> in);

  /// Time shift t -> t + phi applied as phase factors e^{ik phi}.
  FourierField shifted(double phi) const;

 private:
  std::size_t index(int j, int k, std::size_t m) const {
    return (static_cast<std::size_t>(j) * static_cast<std::size_t>(N_ + 1) + static_cast<std::size_t>(k)) * (M_ + 1) +
           m;
  }

  int N_ = 0;
  std::size_t M_ = 0;
  std::vector<cplx> data_;
};

/// Equispaced collocation times t_n = 2 pi n / Nt with synthesis and analysis
/// for harmonics 0..N of real signals.
class TimeGrid {
 public:
  TimeGrid() = default;
  TimeGrid(int N, std::size_t samples);

  int harmonics() const { return N_; }
  std::size_t samples() const { return Nt_; }
  double time(std::size_t n) const;

  /// values[n] = Re c_0 + 2 Re sum_{k=1}^N c_k e^{ik t_n}
  void synthesize(std::span<const cplx> coeffs, std::span<double> values) const;
  /// coeffs[k] = (1/Nt) sum_n values[n] e^{-ik t_n}, k = 0..N
  void analyze(std::span<const double> values, std::span<cplx> coeffs) const;

 private:
  int N_ = 0;
  std::size_t Nt_ = 0;
  std::vector<cplx> table_;  // e^{ik t_n}, row n, column k
};

}  // namespace hopfwave
