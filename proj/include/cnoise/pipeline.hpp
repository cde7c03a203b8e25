#ifndef CNOISE_PIPELINE_HPP
#define CNOISE_PIPELINE_HPP

#include <vector>

#include "cnoise/errors.hpp"
#include "cnoise/mask.hpp"

namespace cnoise {

// Stand-in for a batch of patch embeddings: B x P x D reals, row-major.
struct TokenGrid {
    int batch_size = 0;
    int patches = 0;
    int dim = 0;
    std::vector<double> tokens;

    TokenGrid() = default;
    // patches may be 0 (a fully masked batch has no visible tokens)
    TokenGrid(int b, int p, int d)
        : batch_size(b), patches(p), dim(d),
          tokens(static_cast<std::size_t>(b) * p * d, 0.0) {
        if (b < 1 || p < 0 || d < 1)
            throw invalid_argument_error("TokenGrid: bad dimensions");
    }

    double* token(int b, int p) {
        return tokens.data() + (static_cast<std::size_t>(b) * patches + p) * dim;
    }
    const double* token(int b, int p) const {
        return tokens.data() + (static_cast<std::size_t>(b) * patches + p) * dim;
    }
};

// Select the visible tokens in ids_keep order: output row j of image b is
// tokens[b][ids_keep[b][j]]. This is the encoder-side gather.
inline TokenGrid gather_visible(const TokenGrid& tokens, const MaskBatch& mb) {
    if (tokens.batch_size != mb.batch_size || tokens.patches != mb.num_patches)
        throw invalid_argument_error("gather_visible: shape mismatch");
    TokenGrid out(tokens.batch_size, mb.len_keep, tokens.dim);
    for (int b = 0; b < tokens.batch_size; ++b) {
        const std::int32_t* keep = mb.keep_row(b);
        for (int j = 0; j < mb.len_keep; ++j) {
            std::int32_t src = keep[j];
            if (src < 0 || src >= tokens.patches)
                throw contract_violation_error("gather_visible: ids_keep index out of range");
            const double* from = tokens.token(b, src);
            double* to = out.tokens.data() +
                         (static_cast<std::size_t>(b) * mb.len_keep + j) * tokens.dim;
            std::copy(from, from + tokens.dim, to);
        }
    }
    return out;
}

// Decoder-side unshuffle: kept positions get their visible token back,
// masked positions get the caller-supplied mask token.
inline TokenGrid scatter_restore(const TokenGrid& visible, const std::vector<double>& mask_token,
                                 const MaskBatch& mb) {
    if (visible.batch_size != mb.batch_size || visible.patches != mb.len_keep)
        throw invalid_argument_error("scatter_restore: visible grid shape mismatch");
    if (static_cast<int>(mask_token.size()) != visible.dim)
        throw invalid_argument_error("scatter_restore: mask_token dimension mismatch");

    TokenGrid out(mb.batch_size, mb.num_patches, visible.dim);
    for (int b = 0; b < mb.batch_size; ++b) {
        for (int i = 0; i < mb.num_patches; ++i)
            std::copy(mask_token.begin(), mask_token.end(), out.token(b, i));
        const std::int32_t* keep = mb.keep_row(b);
        for (int j = 0; j < mb.len_keep; ++j) {
            std::int32_t dst = keep[j];
            if (dst < 0 || dst >= mb.num_patches)
                throw contract_violation_error("scatter_restore: ids_keep index out of range");
            const double* from = visible.tokens.data() +
                                 (static_cast<std::size_t>(b) * mb.len_keep + j) * visible.dim;
            std::copy(from, from + visible.dim, out.token(b, dst));
        }
    }
    return out;
}

} // namespace cnoise

#endif // CNOISE_PIPELINE_HPP
