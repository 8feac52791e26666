#ifndef ACCORDION_FFT_HPP
#define ACCORDION_FFT_HPP

#include <complex>
#include <vector>

namespace accordion {

using cdouble = std::complex<double>;

// In-place iterative radix-2 FFT, DFT sign convention
//   X[k] = sum_n x[n] exp(-2*pi*i*k*n/N).
// Size must be a power of two. Unnormalized; inverse applies 1/N.
void fft(std::vector<cdouble>& data);
void ifft(std::vector<cdouble>& data);

bool is_pow2(std::size_t n);

}  // namespace accordion

#endif
