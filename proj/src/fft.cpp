#include "accordion/fft.hpp"

#include <cmath>
#include <numbers>

#include "accordion/errors.hpp"

namespace accordion {

bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

void fft(std::vector<cdouble>& data) {
    const std::size_t n = data.size();
    if (!is_pow2(n))
        throw ParameterError("fft: size " + std::to_string(n) + " is not a power of two");
    if (n == 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    // twiddle table computed directly per index; accurate to machine eps
    std::vector<cdouble> tw(n / 2);
    const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k)
        tw[k] = cdouble(std::cos(step * static_cast<double>(k)),
                        std::sin(step * static_cast<double>(k)));

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cdouble w = tw[k * stride];
                const cdouble u = data[i + k];
                const cdouble v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
            }
        }
    }
}

void ifft(std::vector<cdouble>& data) {
    for (auto& z : data) z = std::conj(z);
    fft(data);
    const double inv = 1.0 / static_cast<double>(data.size());
    for (auto& z : data) z = std::conj(z) * inv;
}

}  // namespace accordion
