#ifndef CNOISE_FFT_HPP
#define CNOISE_FFT_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace cnoise::fft {

using cd = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 Cooley-Tukey, forward (unnormalized).
inline void fft_pow2(std::vector<cd>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        cd wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                cd u = a[i + j];
                cd v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// O(n^2) fallback for non-power-of-two lengths. Only small sizes hit this.
inline void dft_naive(std::vector<cd>& a) {
    const std::size_t n = a.size();
    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cd acc(0.0);
        for (std::size_t t = 0; t < n; ++t) {
            double ang = -2.0 * std::numbers::pi * static_cast<double>(k * t) /
                         static_cast<double>(n);
            acc += a[t] * cd(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    a = std::move(out);
}

inline void transform_1d(std::vector<cd>& a) {
    if (is_pow2(a.size()))
        fft_pow2(a);
    else
        dft_naive(a);
}

// Forward unnormalized 2D DFT of a row-major complex grid.
inline void transform_2d(std::vector<cd>& data, int height, int width) {
    std::vector<cd> line;
    line.resize(width);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) line[x] = data[static_cast<std::size_t>(y) * width + x];
        transform_1d(line);
        for (int x = 0; x < width; ++x) data[static_cast<std::size_t>(y) * width + x] = line[x];
    }
    line.resize(height);
    for (int x = 0; x < width; ++x) {
        for (int y = 0; y < height; ++y) line[y] = data[static_cast<std::size_t>(y) * width + x];
        transform_1d(line);
        for (int y = 0; y < height; ++y) data[static_cast<std::size_t>(y) * width + x] = line[y];
    }
}

} // namespace cnoise::fft

#endif // CNOISE_FFT_HPP
