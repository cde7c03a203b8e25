#ifndef CNOISE_STATS_HPP
#define CNOISE_STATS_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "cnoise/errors.hpp"
#include "cnoise/mask.hpp"

namespace cnoise {

// Spatial structure summary of a set of mask batches: per-position masking
// frequency and 4-connected masked-component sizes.
struct MaskStatistics {
    int num_patches = 0;
    std::size_t rows = 0;
    std::size_t total_masked = 0;
    std::vector<double> coverage;            // P entries in [0,1]
    std::map<int, std::size_t> cluster_sizes; // size -> component count
    double mean_cluster = 0.0;
    int max_cluster = 0;
    double coverage_chi2 = 0.0;
};

namespace detail {

// component sizes of the 1-cells of a win x win binary grid, 4-connectivity
inline void accumulate_clusters(const std::uint8_t* mask, int win,
                                std::map<int, std::size_t>& hist, int& max_cluster,
                                std::vector<std::int32_t>& stack,
                                std::vector<std::uint8_t>& seen) {
    const int P = win * win;
    seen.assign(static_cast<std::size_t>(P), 0);
    for (std::int32_t start = 0; start < P; ++start) {
        if (!mask[start] || seen[start]) continue;
        int size = 0;
        stack.clear();
        stack.push_back(start);
        seen[start] = 1;
        while (!stack.empty()) {
            std::int32_t i = stack.back();
            stack.pop_back();
            ++size;
            int y = i / win, x = i % win;
            const std::int32_t nbrs[4] = {i - win, i + win, i - 1, i + 1};
            const bool ok[4] = {y > 0, y < win - 1, x > 0, x < win - 1};
            for (int d = 0; d < 4; ++d) {
                if (!ok[d]) continue;
                std::int32_t n = nbrs[d];
                if (mask[n] && !seen[n]) {
                    seen[n] = 1;
                    stack.push_back(n);
                }
            }
        }
        hist[size]++;
        if (size > max_cluster) max_cluster = size;
    }
}

} // namespace detail

// All batches must share num_patches; coverage and the chi-square statistic
// are computed over every row of every batch.
inline MaskStatistics compute_stats(const std::vector<MaskBatch>& batches) {
    if (batches.empty())
        throw invalid_argument_error("compute_stats: no batches");
    const int P = batches.front().num_patches;
    const int win = static_cast<int>(std::lround(std::sqrt(static_cast<double>(P))));
    if (win * win != P)
        throw invalid_config_error("compute_stats: num_patches not a perfect square");

    MaskStatistics st;
    st.num_patches = P;
    std::vector<std::size_t> counts(static_cast<std::size_t>(P), 0);
    std::vector<std::int32_t> stack;
    std::vector<std::uint8_t> seen;

    for (const MaskBatch& mb : batches) {
        if (mb.num_patches != P)
            throw invalid_argument_error("compute_stats: mixed num_patches");
        for (int b = 0; b < mb.batch_size; ++b) {
            const std::uint8_t* row = mb.mask.data() + static_cast<std::size_t>(b) * P;
            for (int i = 0; i < P; ++i)
                if (row[i]) {
                    counts[i]++;
                    st.total_masked++;
                }
            detail::accumulate_clusters(row, win, st.cluster_sizes, st.max_cluster, stack, seen);
            st.rows++;
        }
    }

    st.coverage.resize(static_cast<std::size_t>(P));
    for (int i = 0; i < P; ++i)
        st.coverage[i] = static_cast<double>(counts[i]) / static_cast<double>(st.rows);

    std::size_t num_clusters = 0;
    for (const auto& [size, n] : st.cluster_sizes) num_clusters += n;
    if (num_clusters > 0)
        st.mean_cluster = static_cast<double>(st.total_masked) / static_cast<double>(num_clusters);

    // chi-square against uniform expected count total_masked / P
    double expected = static_cast<double>(st.total_masked) / static_cast<double>(P);
    if (expected > 0.0) {
        for (int i = 0; i < P; ++i) {
            double d = static_cast<double>(counts[i]) - expected;
            st.coverage_chi2 += d * d / expected;
        }
    }
    return st;
}

} // namespace cnoise

#endif // CNOISE_STATS_HPP
