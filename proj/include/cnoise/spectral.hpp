#ifndef CNOISE_SPECTRAL_HPP
#define CNOISE_SPECTRAL_HPP

#include <cmath>
#include <vector>

#include "cnoise/errors.hpp"
#include "cnoise/fft.hpp"
#include "cnoise/field.hpp"

namespace cnoise {

// Squared magnitude of the centered 2D DFT (unnormalized forward
// transform, mean subtracted, DC shifted to the array center).
struct Periodogram {
    int height = 0;
    int width = 0;
    std::vector<double> power; // row-major, DC at (height/2, width/2)

    double at(int y, int x) const {
        return power[static_cast<std::size_t>(y) * width + x];
    }
    // normalized radial frequency of a shifted bin, cycles/pixel
    double radial_freq(int y, int x) const {
        double v = static_cast<double>(y - height / 2) / height;
        double u = static_cast<double>(x - width / 2) / width;
        return std::sqrt(u * u + v * v);
    }
    bool is_dc(int y, int x) const { return y == height / 2 && x == width / 2; }
};

struct RadialSpectrum {
    std::vector<double> radii;      // bin centers, cycles/pixel, in (0, 0.5]
    std::vector<double> mean_power; // average power per bin, DC excluded
};

// Energy split of a periodogram into low/mid/high radial bands. Fractions
// sum to 1 unless the field had no non-DC power at all, in which case
// zero_power is set and the fractions are 0.
struct BandPartition {
    double low_cut = 0.0;
    double high_cut = 0.0;
    double energy_low = 0.0;
    double energy_mid = 0.0;
    double energy_high = 0.0;
    bool zero_power = false;
};

inline Periodogram periodogram(const NoiseField& field) {
    const int h = field.height, w = field.width;
    if (h < 1 || w < 1)
        throw invalid_dimension_error("periodogram: empty field");

    double mean = 0.0;
    for (double v : field.values) mean += v;
    mean /= static_cast<double>(field.values.size());

    std::vector<fft::cd> data(field.values.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = fft::cd(field.values[i] - mean, 0.0);
    fft::transform_2d(data, h, w);

    Periodogram p;
    p.height = h;
    p.width = w;
    p.power.resize(data.size());
    // quadrant shift: unshifted bin (ky,kx) lands at ((ky+h/2)%h, (kx+w/2)%w)
    for (int ky = 0; ky < h; ++ky) {
        int sy = (ky + h / 2) % h;
        for (int kx = 0; kx < w; ++kx) {
            int sx = (kx + w / 2) % w;
            p.power[static_cast<std::size_t>(sy) * w + sx] =
                std::norm(data[static_cast<std::size_t>(ky) * w + kx]);
        }
    }
    return p;
}

// Average power over annuli of constant radial frequency. Bins cover
// (0, 0.5]; DC and bins beyond the Nyquist radius are excluded.
inline RadialSpectrum radial_average(const Periodogram& p, int num_bins) {
    if (num_bins < 2)
        throw invalid_parameter_error("radial_average: num_bins must be >= 2");

    RadialSpectrum rs;
    rs.radii.resize(num_bins);
    rs.mean_power.assign(num_bins, 0.0);
    std::vector<std::size_t> counts(num_bins, 0);
    const double bin_width = 0.5 / num_bins;
    for (int i = 0; i < num_bins; ++i) rs.radii[i] = (i + 0.5) * bin_width;

    for (int y = 0; y < p.height; ++y) {
        for (int x = 0; x < p.width; ++x) {
            if (p.is_dc(y, x)) continue;
            double r = p.radial_freq(y, x);
            if (r > 0.5) continue;
            int bin = static_cast<int>(r / bin_width);
            if (bin >= num_bins) bin = num_bins - 1; // r == 0.5
            rs.mean_power[bin] += p.at(y, x);
            counts[bin]++;
        }
    }
    for (int i = 0; i < num_bins; ++i)
        if (counts[i] > 0) rs.mean_power[i] /= static_cast<double>(counts[i]);
    return rs;
}

inline BandPartition band_energy(const Periodogram& p, double low_cut, double high_cut) {
    const double nyq_corner = 0.5 * std::numbers::sqrt2;
    if (!(low_cut > 0.0) || !(low_cut < high_cut) || !(high_cut < nyq_corner))
        throw invalid_parameter_error("band_energy: need 0 < low_cut < high_cut < 0.5*sqrt(2)");

    BandPartition b;
    b.low_cut = low_cut;
    b.high_cut = high_cut;
    double lo = 0.0, mid = 0.0, hi = 0.0;
    for (int y = 0; y < p.height; ++y) {
        for (int x = 0; x < p.width; ++x) {
            if (p.is_dc(y, x)) continue;
            double r = p.radial_freq(y, x);
            double v = p.at(y, x);
            if (r < low_cut)
                lo += v;
            else if (r < high_cut)
                mid += v;
            else
                hi += v;
        }
    }
    double total = lo + mid + hi;
    if (total <= 0.0) {
        b.zero_power = true;
        return b;
    }
    b.energy_low = lo / total;
    b.energy_mid = mid / total;
    b.energy_high = hi / total;
    return b;
}

} // namespace cnoise

#endif // CNOISE_SPECTRAL_HPP
