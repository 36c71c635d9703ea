#pragma once

#include <complex>
#include <vector>

namespace slepsense {

// Unnormalized forward DFT, X[k] = sum_n x[n] exp(-2*pi*i*k*n/N).
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x);

// Unnormalized inverse DFT (no 1/N factor).
std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x);

std::vector<std::complex<double>> fft_real(const std::vector<double>& x);

}  // namespace slepsense
