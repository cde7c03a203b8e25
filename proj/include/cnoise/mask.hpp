#ifndef CNOISE_MASK_HPP
#define CNOISE_MASK_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cnoise/bank.hpp"
#include "cnoise/errors.hpp"
#include "cnoise/rng.hpp"

namespace cnoise {

enum class MaskStrategy : std::uint8_t { color, random, block, grid };

inline const char* to_string(MaskStrategy s) {
    switch (s) {
        case MaskStrategy::color: return "color";
        case MaskStrategy::random: return "random";
        case MaskStrategy::block: return "block";
        case MaskStrategy::grid: return "grid";
    }
    return "?";
}

inline MaskStrategy mask_strategy_from_string(const std::string& s) {
    if (s == "color") return MaskStrategy::color;
    if (s == "random") return MaskStrategy::random;
    if (s == "block") return MaskStrategy::block;
    if (s == "grid") return MaskStrategy::grid;
    throw invalid_config_error("unknown strategy '" + s + "'");
}

struct MaskConfig {
    int num_patches = 196;   // perfect square
    double mask_ratio = 0.75;
    int batch_size = 1;
    MaskStrategy strategy = MaskStrategy::random;

    int window_side() const {
        int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(num_patches))));
        if (s * s != num_patches)
            throw invalid_config_error("num_patches " + std::to_string(num_patches) +
                                       " is not a perfect square");
        return s;
    }
    int len_keep() const {
        return static_cast<int>(num_patches * (1.0 - mask_ratio));
    }
    void validate() const {
        if (num_patches < 1)
            throw invalid_config_error("num_patches must be >= 1");
        window_side();
        if (mask_ratio < 0.0 || mask_ratio > 1.0)
            throw invalid_parameter_error("mask_ratio must be in [0, 1]");
        if (batch_size < 1)
            throw invalid_config_error("batch_size must be >= 1");
    }
};

// Per-image window transform: which bank pattern, where to crop, flips.
struct TransformSpec {
    int crop_x = 0;
    int crop_y = 0;
    bool hflip = false;
    bool vflip = false;
    std::size_t pattern_index = 0;
};

// Batch mask output. mask uses 0 = keep, 1 = remove. ids_shuffle sorts
// patches by descending noise value; ids_restore is its inverse; ids_keep
// is the first len_keep entries of ids_shuffle.
struct MaskBatch {
    int batch_size = 0;
    int num_patches = 0;
    int len_keep = 0;
    std::vector<std::uint8_t> mask;       // batch * P
    std::vector<std::int32_t> ids_shuffle; // batch * P
    std::vector<std::int32_t> ids_restore; // batch * P
    std::vector<std::int32_t> ids_keep;    // batch * len_keep

    std::uint8_t mask_at(int b, int i) const {
        return mask[static_cast<std::size_t>(b) * num_patches + i];
    }
    const std::int32_t* shuffle_row(int b) const {
        return ids_shuffle.data() + static_cast<std::size_t>(b) * num_patches;
    }
    const std::int32_t* restore_row(int b) const {
        return ids_restore.data() + static_cast<std::size_t>(b) * num_patches;
    }
    const std::int32_t* keep_row(int b) const {
        return ids_keep.data() + static_cast<std::size_t>(b) * len_keep;
    }
};

namespace detail {

inline MaskBatch alloc_batch(int batch, int patches, int len_keep) {
    MaskBatch mb;
    mb.batch_size = batch;
    mb.num_patches = patches;
    mb.len_keep = len_keep;
    mb.mask.resize(static_cast<std::size_t>(batch) * patches);
    mb.ids_shuffle.resize(static_cast<std::size_t>(batch) * patches);
    mb.ids_restore.resize(static_cast<std::size_t>(batch) * patches);
    mb.ids_keep.resize(static_cast<std::size_t>(batch) * len_keep);
    return mb;
}

// Fill one batch row from an explicit shuffle order (first len_keep kept).
inline void fill_row_from_shuffle(MaskBatch& mb, int b, const std::int32_t* shuffle) {
    const int P = mb.num_patches;
    std::int32_t* sh = mb.ids_shuffle.data() + static_cast<std::size_t>(b) * P;
    std::int32_t* re = mb.ids_restore.data() + static_cast<std::size_t>(b) * P;
    std::uint8_t* m = mb.mask.data() + static_cast<std::size_t>(b) * P;
    std::int32_t* keep = mb.ids_keep.data() + static_cast<std::size_t>(b) * mb.len_keep;

    std::copy(shuffle, shuffle + P, sh);
    for (int j = 0; j < P; ++j) re[sh[j]] = static_cast<std::int32_t>(j);
    std::fill(m, m + P, std::uint8_t{1});
    for (int j = 0; j < mb.len_keep; ++j) {
        keep[j] = sh[j];
        m[sh[j]] = 0;
    }
}

} // namespace detail

// Descending argsort of a flattened noise window, ties broken by ascending
// flat index so output is platform-independent. The strongest len_keep
// values become the visible patches.
inline void mask_row_from_window(MaskBatch& mb, int b, const double* window) {
    const int P = mb.num_patches;
    std::vector<std::int32_t> order(P);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t c) {
        return window[a] > window[c];
    });
    detail::fill_row_from_shuffle(mb, b, order.data());
}

// Crop a win x win window out of a side x side pattern with optional flips,
// flattened row-major into `out`.
template <typename Scalar>
void extract_window(const Scalar* pattern, int side, const TransformSpec& t,
                    int win, double* out) {
    if (t.crop_x < 0 || t.crop_y < 0 || t.crop_x + win > side || t.crop_y + win > side)
        throw window_too_large_error("extract_window: crop outside pattern bounds");
    for (int y = 0; y < win; ++y) {
        int sy = t.vflip ? (win - 1 - y) : y;
        const Scalar* row = pattern + static_cast<std::size_t>(t.crop_y + sy) * side + t.crop_x;
        for (int x = 0; x < win; ++x) {
            int sx = t.hflip ? (win - 1 - x) : x;
            out[static_cast<std::size_t>(y) * win + x] = static_cast<double>(row[sx]);
        }
    }
}

// Sampling order is fixed (pattern, crop_x, crop_y, hflip, vflip) so a
// given row seed always yields the same transform.
inline TransformSpec sample_transform(Rng& rng, std::size_t pattern_count, int side, int win) {
    TransformSpec t;
    t.pattern_index = static_cast<std::size_t>(rng.next_below(pattern_count));
    t.crop_x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(side - win + 1)));
    t.crop_y = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(side - win + 1)));
    t.hflip = rng.next_bool();
    t.vflip = rng.next_bool();
    return t;
}

// Color-noise masking: per image, crop/flip a window from the bank and keep
// the top len_keep noise values.
inline MaskBatch generate_masks(const NoiseBank& bank, const MaskConfig& cfg,
                                std::uint64_t master_seed) {
    cfg.validate();
    const int win = cfg.window_side();
    if (static_cast<int>(bank.side) < win)
        throw window_too_large_error("generate_masks: bank side " + std::to_string(bank.side) +
                                     " < window side " + std::to_string(win));
    if (bank.count == 0)
        throw invalid_argument_error("generate_masks: empty bank");

    MaskBatch mb = detail::alloc_batch(cfg.batch_size, cfg.num_patches, cfg.len_keep());
    std::vector<double> window(static_cast<std::size_t>(cfg.num_patches));
    for (int b = 0; b < cfg.batch_size; ++b) {
        Rng rng(substream_seed(master_seed, static_cast<std::uint64_t>(b)));
        TransformSpec t = sample_transform(rng, bank.count, static_cast<int>(bank.side), win);
        extract_window(bank.pattern(t.pattern_index), static_cast<int>(bank.side), t, win,
                       window.data());
        mask_row_from_window(mb, b, window.data());
    }
    return mb;
}

// baseline: fresh i.i.d. uniform window per image.
inline MaskBatch generate_random_masks(const MaskConfig& cfg, std::uint64_t master_seed) {
    cfg.validate();
    MaskBatch mb = detail::alloc_batch(cfg.batch_size, cfg.num_patches, cfg.len_keep());
    std::vector<double> window(static_cast<std::size_t>(cfg.num_patches));
    for (int b = 0; b < cfg.batch_size; ++b) {
        Rng rng(substream_seed(master_seed, static_cast<std::uint64_t>(b)));
        for (double& v : window) v = rng.next_double();
        mask_row_from_window(mb, b, window.data());
    }
    return mb;
}

// Block-wise baseline: union random rectangles until the masked count is
// met exactly, trimming the last block from its highest flat index down.
inline MaskBatch generate_block_masks(const MaskConfig& cfg, std::uint64_t master_seed) {
    cfg.validate();
    if (cfg.mask_ratio <= 0.0 || cfg.mask_ratio >= 1.0)
        throw invalid_parameter_error("block masking needs ratio in (0, 1)");
    const int P = cfg.num_patches;
    const int win = cfg.window_side();
    const int target = P - cfg.len_keep();

    MaskBatch mb = detail::alloc_batch(cfg.batch_size, P, cfg.len_keep());
    std::vector<std::uint8_t> masked(static_cast<std::size_t>(P));
    std::vector<std::int32_t> shuffle(static_cast<std::size_t>(P));
    for (int b = 0; b < cfg.batch_size; ++b) {
        Rng rng(substream_seed(master_seed, static_cast<std::uint64_t>(b)));
        std::fill(masked.begin(), masked.end(), std::uint8_t{0});
        int done = 0;
        while (done < target) {
            int remaining = target - done;
            // BEiT-style block sampler: area >= 16 when room allows,
            // aspect ratio uniform in [0.3, 1/0.3]
            int lo = std::min(16, remaining);
            int hi = std::max(16, remaining);
            int area = lo + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(hi - lo + 1)));
            double aspect = rng.next_range(0.3, 1.0 / 0.3);
            int bh = std::clamp(static_cast<int>(std::lround(std::sqrt(area * aspect))), 1, win);
            int bw = std::clamp(static_cast<int>(std::lround(std::sqrt(area / aspect))), 1, win);
            int y0 = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(win - bh + 1)));
            int x0 = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(win - bw + 1)));
            // collect newly covered cells in flat-index order, trim from the top
            std::vector<std::int32_t> fresh;
            for (int y = y0; y < y0 + bh; ++y)
                for (int x = x0; x < x0 + bw; ++x) {
                    std::int32_t idx = y * win + x;
                    if (!masked[idx]) fresh.push_back(idx);
                }
            if (static_cast<int>(fresh.size()) > remaining)
                fresh.resize(static_cast<std::size_t>(remaining));
            for (std::int32_t idx : fresh) masked[idx] = 1;
            done += static_cast<int>(fresh.size());
        }
        int k = 0, r = cfg.len_keep();
        for (std::int32_t i = 0; i < P; ++i)
            shuffle[masked[i] ? r++ : k++] = i;
        detail::fill_row_from_shuffle(mb, b, shuffle.data());
    }
    return mb;
}

// Grid baseline: keep the top-left patch of every 2x2 cell. Deterministic,
// effective mask ratio 0.75.
inline MaskBatch generate_grid_masks(const MaskConfig& cfg) {
    if (cfg.num_patches < 1)
        throw invalid_config_error("num_patches must be >= 1");
    const int win = cfg.window_side();
    if (win % 2 != 0)
        throw invalid_config_error("grid masking needs an even window side, got " +
                                   std::to_string(win));
    if (cfg.batch_size < 1)
        throw invalid_config_error("batch_size must be >= 1");

    const int P = cfg.num_patches;
    const int len_keep = P / 4;
    MaskBatch mb = detail::alloc_batch(cfg.batch_size, P, len_keep);
    std::vector<std::int32_t> shuffle(static_cast<std::size_t>(P));
    int k = 0, r = len_keep;
    for (std::int32_t i = 0; i < P; ++i) {
        int y = i / win, x = i % win;
        bool kept = (y % 2 == 0) && (x % 2 == 0);
        shuffle[kept ? k++ : r++] = i;
    }
    for (int b = 0; b < cfg.batch_size; ++b)
        detail::fill_row_from_shuffle(mb, b, shuffle.data());
    return mb;
}

} // namespace cnoise

#endif // CNOISE_MASK_HPP
