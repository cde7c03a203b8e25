#ifndef CNOISE_BANK_HPP
#define CNOISE_BANK_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "cnoise/color.hpp"
#include "cnoise/errors.hpp"
#include "cnoise/field.hpp"

namespace cnoise {

// Precomputed collection of color-noise patterns. Pattern i is fully
// reproducible from (seed_base + i, color); storage is float32.
struct NoiseBank {
    ColorSpec color;
    std::uint32_t count = 0;
    std::uint32_t side = 0;
    std::uint64_t seed_base = 0;
    std::vector<float> patterns; // count * side * side, pattern-major

    const float* pattern(std::size_t i) const {
        return patterns.data() + i * static_cast<std::size_t>(side) * side;
    }
    std::size_t payload_bytes() const {
        return static_cast<std::size_t>(count) * side * side * sizeof(float);
    }
};

namespace bank_format {

inline constexpr char magic[4] = {'C', 'N', 'B', 'K'};
inline constexpr std::uint16_t version = 1;
// magic + version + kind + reserved + 3 sigmas + iterations + count + side + seed
inline constexpr std::size_t header_bytes = 4 + 2 + 1 + 1 + 3 * 8 + 4 + 4 + 4 + 8;

inline std::size_t file_bytes(std::uint32_t count, std::uint32_t side) {
    return header_bytes + static_cast<std::size_t>(count) * side * side * 4;
}

namespace detail {

template <typename T>
void put_le(std::string& buf, T value) {
    static_assert(std::is_integral_v<T>);
    for (std::size_t i = 0; i < sizeof(T); ++i)
        buf.push_back(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff));
}

inline void put_f64_le(std::string& buf, double value) {
    std::uint64_t bits;
    std::memcpy(&bits, &value, 8);
    put_le(buf, bits);
}

template <typename T>
T get_le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return static_cast<T>(v);
}

inline double get_f64_le(const unsigned char* p) {
    std::uint64_t bits = get_le<std::uint64_t>(p);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

} // namespace detail

inline std::string encode_header(const NoiseBank& bank) {
    std::string h;
    h.reserve(header_bytes);
    h.append(magic, 4);
    detail::put_le(h, version);
    h.push_back(static_cast<char>(bank.color.kind));
    h.push_back('\0'); // reserved
    detail::put_f64_le(h, bank.color.sigma);
    detail::put_f64_le(h, bank.color.sigma1);
    detail::put_f64_le(h, bank.color.sigma2);
    detail::put_le(h, static_cast<std::uint32_t>(bank.color.red_iterations));
    detail::put_le(h, bank.count);
    detail::put_le(h, bank.side);
    detail::put_le(h, bank.seed_base);
    return h;
}

} // namespace bank_format

inline NoiseBank build_bank(const ColorSpec& color, std::uint32_t count,
                            std::uint32_t side, std::uint64_t seed_base,
                            unsigned threads = 1) {
    color.validate();
    if (count < 1)
        throw invalid_parameter_error("build_bank: count must be >= 1");
    int max_r = color.max_kernel_radius();
    if (static_cast<int>(side) < 2 * max_r + 1)
        throw kernel_too_large_error("build_bank: side " + std::to_string(side) +
                                     " too small for kernel radius " + std::to_string(max_r));

    NoiseBank bank;
    bank.color = color;
    bank.count = count;
    bank.side = side;
    bank.seed_base = seed_base;
    bank.patterns.resize(static_cast<std::size_t>(count) * side * side);

    auto build_range = [&](std::uint32_t begin, std::uint32_t end) {
        for (std::uint32_t i = begin; i < end; ++i) {
            NoiseField f = make_color(generate_white(seed_base + i, side, side), color);
            float* dst = bank.patterns.data() + static_cast<std::size_t>(i) * side * side;
            for (std::size_t j = 0; j < f.values.size(); ++j)
                dst[j] = static_cast<float>(f.values[j]);
        }
    };

    if (threads <= 1 || count == 1) {
        build_range(0, count);
    } else {
        // patterns are seed-independent, so any split gives identical bits
        unsigned n = std::min<unsigned>(threads, count);
        std::vector<std::thread> workers;
        std::uint32_t chunk = (count + n - 1) / n;
        for (unsigned t = 0; t < n; ++t) {
            std::uint32_t b = t * chunk;
            std::uint32_t e = std::min(count, b + chunk);
            if (b >= e) break;
            workers.emplace_back(build_range, b, e);
        }
        for (auto& w : workers) w.join();
    }
    return bank;
}

inline void save_bank(const NoiseBank& bank, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error("save_bank: cannot open '" + path.string() + "' for writing");
    std::string header = bank_format::encode_header(bank);
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    // float payload written little-endian; asserted LE host below
    static_assert(std::endian::native == std::endian::little);
    out.write(reinterpret_cast<const char*>(bank.patterns.data()),
              static_cast<std::streamsize>(bank.payload_bytes()));
    if (!out)
        throw io_error("save_bank: write failed for '" + path.string() + "'");
}

inline NoiseBank load_bank(const std::filesystem::path& path) {
    namespace bf = bank_format;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec))
        throw file_not_found_error("load_bank: no such file '" + path.string() + "'");
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("load_bank: cannot open '" + path.string() + "'");

    unsigned char h[bf::header_bytes];
    in.read(reinterpret_cast<char*>(h), bf::header_bytes);
    if (in.gcount() != static_cast<std::streamsize>(bf::header_bytes))
        throw truncated_payload_error("load_bank: file shorter than header");
    if (std::memcmp(h, bf::magic, 4) != 0)
        throw bad_magic_error("load_bank: bad magic in '" + path.string() + "'");
    std::uint16_t ver = bf::detail::get_le<std::uint16_t>(h + 4);
    if (ver != bf::version)
        throw version_mismatch_error("load_bank: format version " + std::to_string(ver) +
                                     ", expected " + std::to_string(bf::version));

    NoiseBank bank;
    std::uint8_t kind = h[6];
    if (kind > 4)
        throw invalid_parameter_error("load_bank: unknown color kind " + std::to_string(kind));
    bank.color.kind = static_cast<NoiseKind>(kind);
    bank.color.sigma = bf::detail::get_f64_le(h + 8);
    bank.color.sigma1 = bf::detail::get_f64_le(h + 16);
    bank.color.sigma2 = bf::detail::get_f64_le(h + 24);
    bank.color.red_iterations = static_cast<int>(bf::detail::get_le<std::uint32_t>(h + 32));
    bank.count = bf::detail::get_le<std::uint32_t>(h + 36);
    bank.side = bf::detail::get_le<std::uint32_t>(h + 40);
    bank.seed_base = bf::detail::get_le<std::uint64_t>(h + 44);

    std::uintmax_t expected = bf::file_bytes(bank.count, bank.side);
    std::uintmax_t actual = std::filesystem::file_size(path);
    std::uintmax_t pattern_bytes = static_cast<std::uintmax_t>(bank.side) * bank.side * 4;
    if (actual != expected) {
        // a shortfall of whole patterns means the header count is wrong;
        // anything else is a cut-off file
        if (actual < expected && (expected - actual) % pattern_bytes != 0)
            throw truncated_payload_error("load_bank: payload truncated (" +
                                          std::to_string(actual) + " of " +
                                          std::to_string(expected) + " bytes)");
        throw length_mismatch_error("load_bank: file length " + std::to_string(actual) +
                                    " does not match header (" + std::to_string(expected) + ")");
    }

    bank.patterns.resize(static_cast<std::size_t>(bank.count) * bank.side * bank.side);
    static_assert(std::endian::native == std::endian::little);
    in.read(reinterpret_cast<char*>(bank.patterns.data()),
            static_cast<std::streamsize>(bank.payload_bytes()));
    if (in.gcount() != static_cast<std::streamsize>(bank.payload_bytes()))
        throw truncated_payload_error("load_bank: short read of payload");
    return bank;
}

} // namespace cnoise

#endif // CNOISE_BANK_HPP
