#pragma once

// Thin FFTW wrappers. Plans are cached per shape and created under a lock;
// execution uses the new-array interface and is safe from several threads.

#include <complex>
#include <vector>

#include "dsqg/array2d.hpp"

namespace dsqg::fft {

/// Per-axis series type. A sine axis with n coefficients (modes 1..n) is
/// sampled at the n interior points i/(n+1), i = 1..n. A cosine axis with
/// n+2 coefficients (modes 0..n+1) is sampled at the n+2 closed-grid points
/// i/(n+1), i = 0..n+1.
enum class Basis { Sine, Cosine };

/// Evaluates sum_j sum_k c_jk phi_j(x_i) psi_k(y_l) with unit-amplitude
/// sin/cos basis functions of argument pi*j*i/(n+1).
Array2D synthesize(const Array2D& coeffs, Basis bx, Basis by);

/// Inverse of synthesize.
Array2D analyze(const Array2D& samples, Basis bx, Basis by);

/// Real-to-complex forward transform of an n0 x n1 real array; result is
/// n0 x (n1/2+1), unnormalized, exp(-i...) convention.
std::vector<std::complex<double>> forward_r2c(const Array2D& in);

/// Complex-to-real inverse (unnormalized, exp(+i...)); `spec` is consumed.
Array2D inverse_c2r(std::vector<std::complex<double>> spec, std::size_t n0, std::size_t n1);

}  // namespace dsqg::fft
