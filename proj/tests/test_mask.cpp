#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <vector>

#include "cnoise/bank.hpp"
#include "cnoise/mask.hpp"

using namespace cnoise;

namespace {

// contract checks shared by all strategies
void check_row_contract(const MaskBatch& mb, int b) {
    const int P = mb.num_patches;
    const std::int32_t* sh = mb.shuffle_row(b);
    const std::int32_t* re = mb.restore_row(b);

    std::vector<bool> seen(P, false);
    for (int j = 0; j < P; ++j) {
        REQUIRE(sh[j] >= 0);
        REQUIRE(sh[j] < P);
        REQUIRE(!seen[sh[j]]);
        seen[sh[j]] = true;
    }
    for (int j = 0; j < P; ++j) REQUIRE(sh[re[j]] == j);

    int ones = 0;
    for (int i = 0; i < P; ++i) ones += mb.mask_at(b, i);
    REQUIRE(ones == P - mb.len_keep);

    for (int j = 0; j < mb.len_keep; ++j) {
        REQUIRE(mb.keep_row(b)[j] == sh[j]);
        REQUIRE(mb.mask_at(b, mb.keep_row(b)[j]) == 0);
    }
}

// brute-force top-k oracle: the keep set maximizing total window value
std::set<int> best_keep_bruteforce(const std::vector<double>& window, int k) {
    const int P = static_cast<int>(window.size());
    std::set<int> best;
    double best_sum = -1e300;
    for (std::uint32_t bits = 0; bits < (1u << P); ++bits) {
        if (std::popcount(bits) != k) continue;
        double sum = 0.0;
        for (int i = 0; i < P; ++i)
            if (bits & (1u << i)) sum += window[i];
        if (sum > best_sum) {
            best_sum = sum;
            best.clear();
            for (int i = 0; i < P; ++i)
                if (bits & (1u << i)) best.insert(i);
        }
    }
    return best;
}

NoiseBank tiny_bank() {
    return build_bank(ColorSpec::defaults(NoiseKind::green), 8, 64, 500);
}

} // namespace

TEST_CASE("fixed 2x2 window keeps the two strongest values") {
    std::vector<double> window = {0.9, 0.1, 0.4, 0.8};
    MaskBatch mb = detail::alloc_batch(1, 4, 2);
    mask_row_from_window(mb, 0, window.data());

    REQUIRE(best_keep_bruteforce(window, 2) == std::set<int>{0, 3});
    REQUIRE(std::set<int>(mb.keep_row(0), mb.keep_row(0) + 2) == std::set<int>{0, 3});
    REQUIRE(mb.mask == std::vector<std::uint8_t>{0, 1, 1, 0});
    check_row_contract(mb, 0);
}

TEST_CASE("color masks honor len_keep = int(P * (1 - ratio))") {
    NoiseBank bank = tiny_bank();
    MaskConfig cfg;
    cfg.num_patches = 196;
    cfg.mask_ratio = 0.75;
    cfg.batch_size = 4;
    cfg.strategy = MaskStrategy::color;
    MaskBatch mb = generate_masks(bank, cfg, 11);
    REQUIRE(mb.len_keep == 49);
    for (int b = 0; b < 4; ++b) {
        int ones = 0;
        for (int i = 0; i < 196; ++i) ones += mb.mask_at(b, i);
        REQUIRE(ones == 147);
        check_row_contract(mb, b);
    }
}

TEST_CASE("ratio 0 keeps everything") {
    MaskConfig cfg;
    cfg.num_patches = 16;
    cfg.mask_ratio = 0.0;
    cfg.batch_size = 2;
    MaskBatch mb = generate_random_masks(cfg, 3);
    for (int b = 0; b < 2; ++b) {
        for (int i = 0; i < 16; ++i) REQUIRE(mb.mask_at(b, i) == 0);
        for (int j = 0; j < 16; ++j) REQUIRE(mb.keep_row(b)[j] == mb.shuffle_row(b)[j]);
    }
}

TEST_CASE("ratio 1 masks everything") {
    MaskConfig cfg;
    cfg.num_patches = 4;
    cfg.mask_ratio = 1.0;
    cfg.batch_size = 1;
    MaskBatch mb = generate_random_masks(cfg, 3);
    REQUIRE(mb.len_keep == 0);
    REQUIRE(mb.ids_keep.empty());
    for (int i = 0; i < 4; ++i) REQUIRE(mb.mask_at(0, i) == 1);
    check_row_contract(mb, 0);
}

TEST_CASE("random masks cover positions uniformly") {
    MaskConfig cfg;
    cfg.num_patches = 196;
    cfg.mask_ratio = 0.75;
    cfg.batch_size = 10000;
    MaskBatch mb = generate_random_masks(cfg, 99);
    for (int i = 0; i < 196; ++i) {
        int count = 0;
        for (int b = 0; b < cfg.batch_size; ++b) count += mb.mask_at(b, i);
        double freq = static_cast<double>(count) / cfg.batch_size;
        REQUIRE(freq == Catch::Approx(0.75).margin(0.02));
    }
}

TEST_CASE("mask generation is deterministic in the seed") {
    NoiseBank bank = tiny_bank();
    MaskConfig cfg;
    cfg.num_patches = 49;
    cfg.batch_size = 8;
    cfg.strategy = MaskStrategy::color;
    MaskBatch a = generate_masks(bank, cfg, 1234);
    MaskBatch b = generate_masks(bank, cfg, 1234);
    REQUIRE(a.mask == b.mask);
    REQUIRE(a.ids_shuffle == b.ids_shuffle);
    MaskBatch c = generate_masks(bank, cfg, 1235);
    REQUIRE(a.mask != c.mask);
}

TEST_CASE("top-k selection is invariant under monotone rescales") {
    Rng rng(555);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> window(49);
        for (double& v : window) v = rng.next_double();

        MaskBatch base = detail::alloc_batch(1, 49, 12);
        mask_row_from_window(base, 0, window.data());

        std::vector<double> cubed(49), affine(49);
        for (int i = 0; i < 49; ++i) {
            cubed[i] = window[i] * window[i] * window[i];
            affine[i] = 2.0 * window[i] + 1.0;
        }
        for (const auto& mapped : {cubed, affine}) {
            MaskBatch other = detail::alloc_batch(1, 49, 12);
            mask_row_from_window(other, 0, mapped.data());
            REQUIRE(other.mask == base.mask);
            REQUIRE(other.ids_shuffle == base.ids_shuffle);
        }
    }
}

TEST_CASE("descending sort breaks ties by ascending flat index") {
    std::vector<double> window = {0.5, 0.7, 0.5, 0.7};
    MaskBatch mb = detail::alloc_batch(1, 4, 2);
    mask_row_from_window(mb, 0, window.data());
    REQUIRE(mb.ids_shuffle == std::vector<std::int32_t>{1, 3, 0, 2});
}

TEST_CASE("flip transform equals flipping the window") {
    NoiseBank bank = tiny_bank();
    const int win = 14;
    TransformSpec t;
    t.crop_x = 10;
    t.crop_y = 20;
    t.pattern_index = 3;

    std::vector<double> plain(win * win), flipped(win * win);
    t.hflip = false;
    extract_window(bank.pattern(3), 64, t, win, plain.data());
    t.hflip = true;
    extract_window(bank.pattern(3), 64, t, win, flipped.data());

    std::vector<double> manual(win * win);
    for (int y = 0; y < win; ++y)
        for (int x = 0; x < win; ++x)
            manual[y * win + x] = plain[y * win + (win - 1 - x)];
    REQUIRE(flipped == manual);

    MaskBatch a = detail::alloc_batch(1, win * win, 49);
    MaskBatch b = detail::alloc_batch(1, win * win, 49);
    mask_row_from_window(a, 0, flipped.data());
    mask_row_from_window(b, 0, manual.data());
    REQUIRE(a.mask == b.mask);
}

TEST_CASE("grid masks keep one patch per 2x2 cell") {
    MaskConfig cfg;
    cfg.num_patches = 196;
    cfg.batch_size = 2;
    MaskBatch mb = generate_grid_masks(cfg);
    REQUIRE(mb.len_keep == 49);
    for (int b = 0; b < 2; ++b) {
        check_row_contract(mb, b);
        for (int cy = 0; cy < 14; cy += 2)
            for (int cx = 0; cx < 14; cx += 2) {
                int ones = mb.mask_at(b, cy * 14 + cx) + mb.mask_at(b, cy * 14 + cx + 1) +
                           mb.mask_at(b, (cy + 1) * 14 + cx) + mb.mask_at(b, (cy + 1) * 14 + cx + 1);
                REQUIRE(ones == 3);
            }
    }
    MaskBatch again = generate_grid_masks(cfg);
    REQUIRE(mb.mask == again.mask);
}

TEST_CASE("grid masking rejects odd window sides") {
    MaskConfig cfg;
    cfg.num_patches = 9;
    REQUIRE_THROWS_AS(generate_grid_masks(cfg), invalid_config_error);
}

TEST_CASE("block masks are exact and contiguous") {
    MaskConfig cfg;
    cfg.num_patches = 16;
    cfg.mask_ratio = 0.5;
    cfg.batch_size = 1;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        MaskBatch mb = generate_block_masks(cfg, seed);
        check_row_contract(mb, 0);
        int ones = 0;
        for (int i = 0; i < 16; ++i) ones += mb.mask_at(0, i);
        REQUIRE(ones == 8);

        // flood-fill oracle: largest 4-connected masked component
        std::vector<int> comp(16, -1);
        int largest = 0;
        for (int s = 0; s < 16; ++s) {
            if (!mb.mask_at(0, s) || comp[s] >= 0) continue;
            std::vector<int> stack{s};
            comp[s] = s;
            int size = 0;
            while (!stack.empty()) {
                int i = stack.back();
                stack.pop_back();
                size++;
                int y = i / 4, x = i % 4;
                auto visit = [&](int n) {
                    if (mb.mask_at(0, n) && comp[n] < 0) {
                        comp[n] = s;
                        stack.push_back(n);
                    }
                };
                if (y > 0) visit(i - 4);
                if (y < 3) visit(i + 4);
                if (x > 0) visit(i - 1);
                if (x < 3) visit(i + 1);
            }
            largest = std::max(largest, size);
        }
        REQUIRE(largest >= 4);
    }
}

TEST_CASE("validation errors are specific") {
    NoiseBank bank = tiny_bank();
    MaskConfig cfg;

    cfg.num_patches = 12; // not a perfect square
    REQUIRE_THROWS_AS(generate_random_masks(cfg, 1), invalid_config_error);

    cfg.num_patches = 196;
    cfg.mask_ratio = 1.5;
    REQUIRE_THROWS_AS(generate_random_masks(cfg, 1), invalid_parameter_error);

    cfg.mask_ratio = 0.75;
    cfg.num_patches = 100 * 100; // window 100 > bank side 64
    REQUIRE_THROWS_AS(generate_masks(bank, cfg, 1), window_too_large_error);

    cfg.num_patches = 16;
    cfg.mask_ratio = 0.0;
    REQUIRE_THROWS_AS(generate_block_masks(cfg, 1), invalid_parameter_error);
}
