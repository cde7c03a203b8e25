#ifndef CNOISE_GAUSSIAN_HPP
#define CNOISE_GAUSSIAN_HPP

#include <cmath>
#include <vector>

#include "cnoise/errors.hpp"
#include "cnoise/field.hpp"

namespace cnoise {

// Truncated, normalized 1D Gaussian. radius = ceil(3*sigma), weights sum
// to exactly 1 so every blur has unit DC gain.
struct GaussianKernel {
    double sigma = 0.0;
    int radius = 0;
    std::vector<double> weights; // 2*radius + 1 entries, symmetric
};

inline GaussianKernel gaussian_kernel(double sigma) {
    if (!(sigma > 0.0))
        throw invalid_parameter_error("gaussian_kernel: sigma must be > 0");
    GaussianKernel k;
    k.sigma = sigma;
    k.radius = static_cast<int>(std::ceil(3.0 * sigma));
    k.weights.resize(2 * k.radius + 1);
    double sum = 0.0;
    for (int i = -k.radius; i <= k.radius; ++i) {
        double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        k.weights[i + k.radius] = w;
        sum += w;
    }
    for (double& w : k.weights) w /= sum;
    return k;
}

namespace detail {

// mirror reflection with edge repeat: -1 -> 0, n -> n-1. This variant
// redistributes boundary weight symmetrically, so a symmetric unit-gain
// kernel preserves the field sum exactly.
inline int reflect_index(int i, int n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
    return i;
}

} // namespace detail

// Separable convolution, horizontal pass then vertical pass, mirror-reflect
// boundaries. Output has the same dimensions as the input.
inline NoiseField convolve_gaussian(const NoiseField& field, const GaussianKernel& kernel) {
    const int h = field.height, w = field.width, r = kernel.radius;
    if (h < 1 || w < 1)
        throw invalid_dimension_error("convolve_gaussian: empty field");
    if (r >= std::min(h, w))
        throw kernel_too_large_error("convolve_gaussian: kernel radius " +
                                     std::to_string(r) + " >= min dimension " +
                                     std::to_string(std::min(h, w)));

    NoiseField tmp(h, w);
    for (int y = 0; y < h; ++y) {
        const double* row = &field.values[static_cast<std::size_t>(y) * w];
        double* out = &tmp.values[static_cast<std::size_t>(y) * w];
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int t = -r; t <= r; ++t)
                acc += kernel.weights[t + r] * row[detail::reflect_index(x + t, w)];
            out[x] = acc;
        }
    }

    NoiseField out(h, w);
    out.provenance = field.provenance;
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) {
            double acc = 0.0;
            for (int t = -r; t <= r; ++t)
                acc += kernel.weights[t + r] *
                       tmp.values[static_cast<std::size_t>(detail::reflect_index(y + t, h)) * w + x];
            out.values[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    return out;
}

} // namespace cnoise

#endif // CNOISE_GAUSSIAN_HPP
