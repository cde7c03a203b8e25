#ifndef CNOISE_COLOR_HPP
#define CNOISE_COLOR_HPP

#include <cstdint>

#include "cnoise/errors.hpp"
#include "cnoise/field.hpp"
#include "cnoise/gaussian.hpp"

namespace cnoise {

// Filter recipe turning base noise into a color noise.
//   red:    iterated blur(sigma) + normalize          (low-pass)
//   blue:   W - blur(W, sigma)                        (high-pass)
//   green:  blur(W, sigma1) - blur(W, sigma2)         (band-pass)
//   purple: W - (blur(W, sigma1) - blur(W, sigma2))   (band-stop)
struct ColorSpec {
    NoiseKind kind = NoiseKind::white;
    double sigma = 2.0;        // red, blue
    double sigma1 = 1.0;       // green, purple
    double sigma2 = 4.0;       // green, purple
    int red_iterations = 3;    // red only

    static ColorSpec defaults(NoiseKind kind) {
        ColorSpec s;
        s.kind = kind;
        return s;
    }

    void validate() const {
        switch (kind) {
            case NoiseKind::white:
                break;
            case NoiseKind::red:
                if (!(sigma > 0.0))
                    throw invalid_parameter_error("red noise: sigma must be > 0");
                if (red_iterations < 1)
                    throw invalid_parameter_error("red noise: iterations must be >= 1");
                break;
            case NoiseKind::blue:
                if (!(sigma > 0.0))
                    throw invalid_parameter_error("blue noise: sigma must be > 0");
                break;
            case NoiseKind::green:
            case NoiseKind::purple:
                if (!(sigma1 > 0.0) || !(sigma2 > 0.0))
                    throw invalid_parameter_error("band filter: sigmas must be > 0");
                if (!(sigma1 < sigma2))
                    throw invalid_parameter_error("band filter: sigma1 must be < sigma2");
                break;
        }
    }

    // largest blur radius this spec will apply
    int max_kernel_radius() const {
        switch (kind) {
            case NoiseKind::white: return 0;
            case NoiseKind::red:
            case NoiseKind::blue: return gaussian_kernel(sigma).radius;
            case NoiseKind::green:
            case NoiseKind::purple: return gaussian_kernel(sigma2).radius;
        }
        return 0;
    }
};

// Filter composition before the final min-max normalization. For red the
// intermediate normalizations between blur rounds are kept (they are part
// of the recipe), only the trailing one is left to make_color.
inline NoiseField color_raw(const NoiseField& white, const ColorSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case NoiseKind::white:
            return white;
        case NoiseKind::red: {
            GaussianKernel k = gaussian_kernel(spec.sigma);
            NoiseField f = convolve_gaussian(white, k);
            for (int i = 1; i < spec.red_iterations; ++i)
                f = convolve_gaussian(normalize(f), k);
            return f;
        }
        case NoiseKind::blue: {
            NoiseField low = convolve_gaussian(white, gaussian_kernel(spec.sigma));
            NoiseField out = white;
            for (std::size_t i = 0; i < out.values.size(); ++i)
                out.values[i] -= low.values[i];
            return out;
        }
        case NoiseKind::green: {
            NoiseField weak = convolve_gaussian(white, gaussian_kernel(spec.sigma1));
            NoiseField strong = convolve_gaussian(white, gaussian_kernel(spec.sigma2));
            for (std::size_t i = 0; i < weak.values.size(); ++i)
                weak.values[i] -= strong.values[i];
            return weak;
        }
        case NoiseKind::purple: {
            ColorSpec g = spec;
            g.kind = NoiseKind::green;
            NoiseField band = color_raw(white, g);
            NoiseField out = white;
            for (std::size_t i = 0; i < out.values.size(); ++i)
                out.values[i] -= band.values[i];
            return out;
        }
    }
    throw invalid_parameter_error("color_raw: unknown kind");
}

// Full color transform: filter composition followed by min-max
// normalization to [0,1]. Provenance is stamped with the color kind.
inline NoiseField make_color(const NoiseField& white, const ColorSpec& spec) {
    NoiseField out = normalize(color_raw(white, spec));
    out.provenance = spec.kind;
    return out;
}

} // namespace cnoise

#endif // CNOISE_COLOR_HPP
