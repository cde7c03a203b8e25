#ifndef CNOISE_FIELD_HPP
#define CNOISE_FIELD_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "cnoise/errors.hpp"
#include "cnoise/rng.hpp"

namespace cnoise {

enum class NoiseKind : std::uint8_t {
    white = 0,
    red = 1,
    blue = 2,
    green = 3,
    purple = 4,
};

inline const char* to_string(NoiseKind k) {
    switch (k) {
        case NoiseKind::white: return "white";
        case NoiseKind::red: return "red";
        case NoiseKind::blue: return "blue";
        case NoiseKind::green: return "green";
        case NoiseKind::purple: return "purple";
    }
    return "?";
}

inline NoiseKind noise_kind_from_string(const std::string& s) {
    if (s == "white") return NoiseKind::white;
    if (s == "red") return NoiseKind::red;
    if (s == "blue") return NoiseKind::blue;
    if (s == "green") return NoiseKind::green;
    if (s == "purple") return NoiseKind::purple;
    throw invalid_parameter_error("unknown noise color '" + s + "'");
}

// 2D real-valued field, row-major. Holds the base random noise or any
// filtered variant of it.
struct NoiseField {
    int height = 0;
    int width = 0;
    std::vector<double> values;
    NoiseKind provenance = NoiseKind::white;

    NoiseField() = default;
    NoiseField(int h, int w, double fill = 0.0)
        : height(h), width(w),
          values(static_cast<std::size_t>(h) * static_cast<std::size_t>(w), fill) {
        if (h < 1 || w < 1)
            throw invalid_dimension_error("field dimensions must be >= 1");
    }

    double& at(int y, int x) {
        return values[static_cast<std::size_t>(y) * width + x];
    }
    double at(int y, int x) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }
    std::size_t size() const { return values.size(); }
};

// i.i.d. uniform [0,1) noise, deterministic in the seed.
inline NoiseField generate_white(std::uint64_t seed, int height, int width) {
    if (height < 1 || width < 1)
        throw invalid_dimension_error("generate_white: dimensions must be >= 1");
    NoiseField f(height, width);
    Rng rng(seed);
    for (double& v : f.values) v = rng.next_double();
    f.provenance = NoiseKind::white;
    return f;
}

// Affine min-max rescale to [0,1]. A constant field maps to all 0.5.
inline NoiseField normalize(const NoiseField& field) {
    if (field.values.empty())
        throw invalid_dimension_error("normalize: empty field");
    auto [lo_it, hi_it] = std::minmax_element(field.values.begin(), field.values.end());
    double lo = *lo_it, hi = *hi_it;
    NoiseField out = field;
    if (hi == lo) {
        std::fill(out.values.begin(), out.values.end(), 0.5);
        return out;
    }
    double range = hi - lo;
    for (double& v : out.values) v = (v - lo) / range;
    return out;
}

} // namespace cnoise

#endif // CNOISE_FIELD_HPP
