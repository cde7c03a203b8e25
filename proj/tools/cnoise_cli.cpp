// Command-line front end: bank building, spectral analysis, mask
// generation, mask statistics, throughput benchmarks, manifest replay.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cnoise/cnoise.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace cnoise;

namespace {

constexpr const char* kToolVersion = "1.0.0";

// fixed sub-stream indices for expanding the master seed
constexpr std::uint64_t kStreamMasks = 0x6d61736b;
constexpr std::uint64_t kStreamStats = 0x73746174;
constexpr std::uint64_t kStreamBenchColor = 0x62636f6c;
constexpr std::uint64_t kStreamBenchRandom = 0x62726e64;

fs::path timestamped_dir(const std::string& prefix) {
    auto now = std::chrono::system_clock::now().time_since_epoch();
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    return fs::path(prefix + "-" + std::to_string(ms));
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw io_error("cannot open '" + path.string() + "' for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw io_error("write failed for '" + path.string() + "'");
}

void write_manifest(const fs::path& path, const std::string& command, const json& params,
                    const std::vector<std::string>& outputs) {
    json m;
    m["tool_version"] = kToolVersion;
    m["command"] = command;
    m["params"] = params;
    m["outputs"] = outputs;
    write_text(path, m.dump(2) + "\n");
}

ColorSpec color_spec_from_params(const json& p) {
    ColorSpec spec = ColorSpec::defaults(noise_kind_from_string(p.at("color")));
    if (p.contains("sigma")) spec.sigma = p["sigma"];
    if (p.contains("sigma1")) spec.sigma1 = p["sigma1"];
    if (p.contains("sigma2")) spec.sigma2 = p["sigma2"];
    if (p.contains("iterations")) spec.red_iterations = p["iterations"];
    spec.validate();
    return spec;
}

// ---------------------------------------------------------------- gen-bank

void run_gen_bank(const json& p) {
    ColorSpec spec = color_spec_from_params(p);
    NoiseBank bank = build_bank(spec, p.at("count"), p.at("side"), p.at("seed"),
                                p.value("threads", 1u));
    fs::path out = p.at("out").get<std::string>();
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    save_bank(bank, out);
    write_manifest(out.string() + ".manifest.json", "gen-bank", p, {out.filename().string()});
    std::cout << "wrote " << out.string() << " (" << bank_format::file_bytes(bank.count, bank.side)
              << " bytes, " << bank.count << " x " << bank.side << "x" << bank.side << " "
              << to_string(spec.kind) << ")\n";
}

// ----------------------------------------------------------------- analyze

std::string radial_csv(const RadialSpectrum& rs) {
    std::ostringstream os;
    os.precision(17);
    os << "radius,mean_power\r\n";
    for (std::size_t i = 0; i < rs.radii.size(); ++i)
        os << rs.radii[i] << "," << rs.mean_power[i] << "\r\n";
    return os.str();
}

void write_periodogram_png(const fs::path& path, const std::vector<double>& power,
                           int height, int width) {
    // log scale, min..max mapped to 0..255
    std::vector<double> lg(power.size());
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < power.size(); ++i) {
        lg[i] = std::log1p(power[i]);
        lo = std::min(lo, lg[i]);
        hi = std::max(hi, lg[i]);
    }
    std::vector<std::uint8_t> px(power.size(), 0);
    if (hi > lo)
        for (std::size_t i = 0; i < px.size(); ++i)
            px[i] = static_cast<std::uint8_t>(std::lround(255.0 * (lg[i] - lo) / (hi - lo)));
    png::write_gray8(path, px.data(), height, width);
}

void run_analyze(const json& p) {
    NoiseBank bank = load_bank(p.at("bank").get<std::string>());
    int bins = p.value("bins", 32);
    double low = p.value("low", 0.05);
    double high = p.value("high", 0.25);

    fs::path out = p.at("out").get<std::string>();
    fs::create_directories(out);

    // pattern-averaged periodogram of the whole bank
    const int side = static_cast<int>(bank.side);
    std::vector<double> avg_power(static_cast<std::size_t>(side) * side, 0.0);
    for (std::uint32_t i = 0; i < bank.count; ++i) {
        NoiseField f(side, side);
        const float* src = bank.pattern(i);
        for (std::size_t j = 0; j < f.values.size(); ++j) f.values[j] = src[j];
        Periodogram pg = periodogram(f);
        for (std::size_t j = 0; j < avg_power.size(); ++j) avg_power[j] += pg.power[j];
    }
    for (double& v : avg_power) v /= static_cast<double>(bank.count);

    Periodogram avg;
    avg.height = side;
    avg.width = side;
    avg.power = avg_power;

    RadialSpectrum rs = radial_average(avg, bins);
    BandPartition band = band_energy(avg, low, high);

    write_text(out / "radial.csv", radial_csv(rs));
    write_periodogram_png(out / "periodogram.png", avg_power, side, side);

    json report;
    report["color"] = to_string(bank.color.kind);
    report["patterns"] = bank.count;
    report["side"] = bank.side;
    report["low_cut"] = band.low_cut;
    report["high_cut"] = band.high_cut;
    report["energy_low"] = band.energy_low;
    report["energy_mid"] = band.energy_mid;
    report["energy_high"] = band.energy_high;
    report["zero_power"] = band.zero_power;
    write_text(out / "band.json", report.dump(2) + "\n");
    write_manifest(out / "manifest.json", "analyze", p,
                   {"radial.csv", "periodogram.png", "band.json"});
    std::cout << "band energies (low/mid/high): " << band.energy_low << " / " << band.energy_mid
              << " / " << band.energy_high << "\n";
}

// --------------------------------------------------------------- gen-masks

MaskBatch dispatch_masks(const json& p, std::uint64_t seed) {
    MaskConfig cfg;
    cfg.num_patches = p.at("patches");
    cfg.mask_ratio = p.value("ratio", 0.75);
    cfg.batch_size = p.value("batch", 1);
    cfg.strategy = mask_strategy_from_string(p.at("strategy"));
    switch (cfg.strategy) {
        case MaskStrategy::color: {
            if (!p.contains("bank"))
                throw invalid_config_error("color strategy requires --bank");
            NoiseBank bank = load_bank(p["bank"].get<std::string>());
            return generate_masks(bank, cfg, seed);
        }
        case MaskStrategy::random:
            return generate_random_masks(cfg, seed);
        case MaskStrategy::block:
            return generate_block_masks(cfg, seed);
        case MaskStrategy::grid:
            return generate_grid_masks(cfg);
    }
    throw invalid_config_error("unknown strategy");
}

std::string masks_csv(const MaskBatch& mb) {
    std::ostringstream os;
    for (int b = 0; b < mb.batch_size; ++b) {
        for (int i = 0; i < mb.num_patches; ++i) {
            if (i) os << ",";
            os << static_cast<int>(mb.mask_at(b, i));
        }
        os << "\r\n";
    }
    return os.str();
}

void write_mask_png(const fs::path& path, const MaskBatch& mb, int row) {
    int win = static_cast<int>(std::lround(std::sqrt(static_cast<double>(mb.num_patches))));
    std::vector<std::uint8_t> px(static_cast<std::size_t>(mb.num_patches));
    for (int i = 0; i < mb.num_patches; ++i)
        px[i] = mb.mask_at(row, i) ? 255 : 0;
    png::write_gray8(path, px.data(), win, win);
}

void run_gen_masks(const json& p) {
    std::uint64_t seed = substream_seed(p.value("seed", 0ull), kStreamMasks);
    MaskBatch mb = dispatch_masks(p, seed);

    fs::path out = p.at("out").get<std::string>();
    fs::create_directories(out);
    write_text(out / "masks.csv", masks_csv(mb));
    write_mask_png(out / "mask_row0.png", mb, 0);

    json meta;
    meta["strategy"] = p.at("strategy");
    meta["seed"] = p.value("seed", 0ull);
    meta["ratio"] = p.value("ratio", 0.75);
    meta["patches"] = p.at("patches");
    meta["batch"] = p.value("batch", 1);
    meta["len_keep"] = mb.len_keep;
    write_text(out / "batch.json", meta.dump(2) + "\n");
    write_manifest(out / "manifest.json", "gen-masks", p,
                   {"masks.csv", "mask_row0.png", "batch.json"});
    std::cout << "generated " << mb.batch_size << " mask rows, " << mb.num_patches - mb.len_keep
              << " masked of " << mb.num_patches << " patches each\n";
}

// ------------------------------------------------------------------- stats

void write_histogram_png(const fs::path& path, const std::map<int, std::size_t>& hist) {
    // crude bar chart: x = cluster size, y = count (linear scale)
    int max_size = 1;
    std::size_t max_count = 1;
    for (const auto& [size, n] : hist) {
        max_size = std::max(max_size, size);
        max_count = std::max(max_count, n);
    }
    const int h = 128, w = std::max(max_size, 16);
    std::vector<std::uint8_t> px(static_cast<std::size_t>(h) * w, 0);
    for (const auto& [size, n] : hist) {
        int bar = static_cast<int>(std::lround(
            static_cast<double>(h) * static_cast<double>(n) / static_cast<double>(max_count)));
        for (int y = h - bar; y < h; ++y)
            px[static_cast<std::size_t>(y) * w + (size - 1)] = 255;
    }
    png::write_gray8(path, px.data(), h, w);
}

void run_stats(const json& p) {
    std::uint64_t seed = substream_seed(p.value("seed", 0ull), kStreamStats);
    int rows = p.value("rows", 1000);
    if (rows < 1) throw invalid_parameter_error("stats: rows must be >= 1");

    json gen = p;
    gen["batch"] = rows;
    MaskBatch mb = dispatch_masks(gen, seed);
    MaskStatistics st = compute_stats({mb});

    fs::path out = p.at("out").get<std::string>();
    fs::create_directories(out);

    json report;
    report["strategy"] = p.at("strategy");
    report["rows"] = st.rows;
    report["patches"] = st.num_patches;
    report["total_masked"] = st.total_masked;
    report["mean_cluster"] = st.mean_cluster;
    report["max_cluster"] = st.max_cluster;
    report["coverage_chi2"] = st.coverage_chi2;
    json hist = json::object();
    for (const auto& [size, n] : st.cluster_sizes) hist[std::to_string(size)] = n;
    report["cluster_sizes"] = hist;
    report["coverage"] = st.coverage;
    write_text(out / "stats.json", report.dump(2) + "\n");
    write_histogram_png(out / "cluster_hist.png", st.cluster_sizes);
    write_manifest(out / "manifest.json", "stats", p, {"stats.json", "cluster_hist.png"});
    std::cout << "mean cluster " << st.mean_cluster << ", max cluster " << st.max_cluster
              << ", coverage chi2 " << st.coverage_chi2 << "\n";
}

// ------------------------------------------------------------------- bench

void run_bench(const json& p) {
    int iterations = p.value("iterations", 100);
    if (iterations < 1) throw invalid_parameter_error("bench: iterations must be >= 1");

    MaskConfig cfg;
    cfg.num_patches = p.value("patches", 196);
    cfg.mask_ratio = p.value("ratio", 0.75);
    cfg.batch_size = p.value("batch", 4096);
    cfg.validate();
    std::uint64_t master = p.value("seed", 0ull);

    NoiseBank bank;
    if (p.contains("bank")) {
        bank = load_bank(p["bank"].get<std::string>());
    } else {
        ColorSpec green = ColorSpec::defaults(NoiseKind::green);
        bank = build_bank(green, 64, 64, master);
    }

    using clock = std::chrono::steady_clock;
    // FNV-1a over the first iteration's mask bytes; ties the timing run to
    // a reproducible fingerprint of what was generated
    auto fnv = [](std::uint64_t h, const std::vector<std::uint8_t>& bytes) {
        for (std::uint8_t b : bytes) {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
        return h;
    };
    std::uint64_t color_hash = 0xcbf29ce484222325ULL;
    std::uint64_t random_hash = 0xcbf29ce484222325ULL;

    auto t0 = clock::now();
    for (int it = 0; it < iterations; ++it) {
        MaskBatch mb = generate_masks(bank, cfg, substream_seed(master + it, kStreamBenchColor));
        if (it == 0) color_hash = fnv(color_hash, mb.mask);
    }
    auto t1 = clock::now();
    for (int it = 0; it < iterations; ++it) {
        MaskBatch mb = generate_random_masks(cfg, substream_seed(master + it, kStreamBenchRandom));
        if (it == 0) random_hash = fnv(random_hash, mb.mask);
    }
    auto t2 = clock::now();

    double color_s = std::chrono::duration<double>(t1 - t0).count();
    double random_s = std::chrono::duration<double>(t2 - t1).count();
    double total_masks = static_cast<double>(cfg.batch_size) * iterations;

    fs::path out = p.at("out").get<std::string>();
    fs::create_directories(out);

    // bench.json is deterministic (config + mask fingerprints) and listed
    // in the manifest; wall times go to timings.json which is not, since
    // measured durations cannot be bit-reproduced
    json report;
    report["batch"] = cfg.batch_size;
    report["patches"] = cfg.num_patches;
    report["ratio"] = cfg.mask_ratio;
    report["iterations"] = iterations;
    report["color_mask_fnv1a"] = color_hash;
    report["random_mask_fnv1a"] = random_hash;
    write_text(out / "bench.json", report.dump(2) + "\n");

    json timings;
    timings["color_seconds"] = color_s;
    timings["random_seconds"] = random_s;
    timings["color_masks_per_second"] = total_masks / color_s;
    timings["random_masks_per_second"] = total_masks / random_s;
    timings["color_over_random_time_ratio"] = color_s / random_s;
    write_text(out / "timings.json", timings.dump(2) + "\n");
    write_manifest(out / "manifest.json", "bench", p, {"bench.json"});
    std::cout << "color:  " << total_masks / color_s << " masks/s\n"
              << "random: " << total_masks / random_s << " masks/s\n"
              << "time ratio (color/random): " << color_s / random_s << "\n";
}

// ------------------------------------------------------------------ replay

void dispatch(const std::string& command, const json& params);

void run_replay(const fs::path& manifest_path, const std::string& out_override) {
    std::error_code ec;
    if (!fs::exists(manifest_path, ec))
        throw file_not_found_error("replay: no such manifest '" + manifest_path.string() + "'");
    std::ifstream in(manifest_path);
    json m = json::parse(in, nullptr, true);
    json params = m.at("params");
    if (!out_override.empty()) params["out"] = out_override;
    dispatch(m.at("command"), params);
}

void dispatch(const std::string& command, const json& params) {
    if (command == "gen-bank") run_gen_bank(params);
    else if (command == "analyze") run_analyze(params);
    else if (command == "gen-masks") run_gen_masks(params);
    else if (command == "stats") run_stats(params);
    else if (command == "bench") run_bench(params);
    else throw invalid_config_error("unknown command '" + command + "' in manifest");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"color-noise mask generation toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    json p; // resolved parameters of the selected command

    // gen-bank
    auto* gen_bank = app.add_subcommand("gen-bank", "precompute a color-noise bank");
    std::string gb_color = "green", gb_out;
    std::uint32_t gb_count = 3072, gb_side = 256;
    std::uint64_t gb_seed = 0;
    double gb_sigma = 2.0, gb_sigma1 = 1.0, gb_sigma2 = 4.0;
    int gb_iters = 3;
    unsigned gb_threads = 1;
    gen_bank->add_option("--color", gb_color, "white|red|blue|green|purple");
    gen_bank->add_option("--count", gb_count, "number of patterns");
    gen_bank->add_option("--side", gb_side, "pattern side in pixels");
    gen_bank->add_option("--seed", gb_seed, "seed base");
    gen_bank->add_option("--sigma", gb_sigma, "red/blue sigma");
    gen_bank->add_option("--sigma1", gb_sigma1, "green/purple weak sigma");
    gen_bank->add_option("--sigma2", gb_sigma2, "green/purple strong sigma");
    gen_bank->add_option("--iterations", gb_iters, "red blur iterations");
    gen_bank->add_option("--threads", gb_threads, "worker threads");
    gen_bank->add_option("--out", gb_out, "output .cnbk file");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "spectral report for a bank");
    std::string an_bank, an_out;
    int an_bins = 32;
    double an_low = 0.05, an_high = 0.25;
    analyze->add_option("--bank", an_bank, "input .cnbk file")->required();
    analyze->add_option("--bins", an_bins, "radial bins");
    analyze->add_option("--low", an_low, "low band cut, cycles/pixel");
    analyze->add_option("--high", an_high, "high band cut, cycles/pixel");
    analyze->add_option("--out", an_out, "output directory");

    // gen-masks
    auto* gen_masks = app.add_subcommand("gen-masks", "generate binary patch masks");
    std::string gm_strategy = "random", gm_bank, gm_out;
    int gm_patches = 196, gm_batch = 1;
    double gm_ratio = 0.75;
    std::uint64_t gm_seed = 0;
    gen_masks->add_option("--strategy", gm_strategy, "color|random|block|grid");
    gen_masks->add_option("--bank", gm_bank, ".cnbk file (color strategy)");
    gen_masks->add_option("--patches", gm_patches, "patches per image (perfect square)");
    gen_masks->add_option("--ratio", gm_ratio, "mask ratio");
    gen_masks->add_option("--batch", gm_batch, "rows to generate");
    gen_masks->add_option("--seed", gm_seed, "master seed");
    gen_masks->add_option("--out", gm_out, "output directory");

    // stats
    auto* stats = app.add_subcommand("stats", "mask spatial statistics");
    std::string st_strategy = "random", st_bank, st_out;
    int st_patches = 196, st_rows = 1000;
    double st_ratio = 0.75;
    std::uint64_t st_seed = 0;
    stats->add_option("--strategy", st_strategy, "color|random|block|grid");
    stats->add_option("--bank", st_bank, ".cnbk file (color strategy)");
    stats->add_option("--patches", st_patches, "patches per image");
    stats->add_option("--ratio", st_ratio, "mask ratio");
    stats->add_option("--rows", st_rows, "mask rows to analyze");
    stats->add_option("--seed", st_seed, "master seed");
    stats->add_option("--out", st_out, "output directory");

    // bench
    auto* bench = app.add_subcommand("bench", "color vs random mask throughput");
    std::string be_bank, be_out;
    int be_patches = 196, be_batch = 4096, be_iters = 100;
    double be_ratio = 0.75;
    std::uint64_t be_seed = 0;
    bench->add_option("--bank", be_bank, ".cnbk file (default: in-memory green mini bank)");
    bench->add_option("--patches", be_patches, "patches per image");
    bench->add_option("--batch", be_batch, "rows per iteration");
    bench->add_option("--ratio", be_ratio, "mask ratio");
    bench->add_option("--iterations", be_iters, "iterations per strategy");
    bench->add_option("--seed", be_seed, "master seed");
    bench->add_option("--out", be_out, "output directory");

    // replay
    auto* replay = app.add_subcommand("replay", "re-run a command from its manifest");
    std::string rp_manifest, rp_out;
    replay->add_option("manifest", rp_manifest, "manifest.json path")->required();
    replay->add_option("--out", rp_out, "override output location");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_bank->parsed()) {
            if (gb_out.empty()) gb_out = (timestamped_dir("bank") += ".cnbk").string();
            p = {{"color", gb_color}, {"count", gb_count}, {"side", gb_side},
                 {"seed", gb_seed},   {"out", gb_out},     {"threads", gb_threads}};
            NoiseKind kind = noise_kind_from_string(gb_color);
            if (kind == NoiseKind::red || kind == NoiseKind::blue) p["sigma"] = gb_sigma;
            if (kind == NoiseKind::red) p["iterations"] = gb_iters;
            if (kind == NoiseKind::green || kind == NoiseKind::purple) {
                p["sigma1"] = gb_sigma1;
                p["sigma2"] = gb_sigma2;
            }
            run_gen_bank(p);
        } else if (analyze->parsed()) {
            if (an_out.empty()) an_out = timestamped_dir("analyze").string();
            p = {{"bank", an_bank}, {"bins", an_bins}, {"low", an_low},
                 {"high", an_high}, {"out", an_out}};
            run_analyze(p);
        } else if (gen_masks->parsed()) {
            if (gm_out.empty()) gm_out = timestamped_dir("masks").string();
            p = {{"strategy", gm_strategy}, {"patches", gm_patches}, {"ratio", gm_ratio},
                 {"batch", gm_batch},       {"seed", gm_seed},       {"out", gm_out}};
            if (!gm_bank.empty()) p["bank"] = gm_bank;
            run_gen_masks(p);
        } else if (stats->parsed()) {
            if (st_out.empty()) st_out = timestamped_dir("stats").string();
            p = {{"strategy", st_strategy}, {"patches", st_patches}, {"ratio", st_ratio},
                 {"rows", st_rows},         {"seed", st_seed},       {"out", st_out}};
            if (!st_bank.empty()) p["bank"] = st_bank;
            run_stats(p);
        } else if (bench->parsed()) {
            if (be_out.empty()) be_out = timestamped_dir("bench").string();
            p = {{"patches", be_patches}, {"batch", be_batch}, {"ratio", be_ratio},
                 {"iterations", be_iters}, {"seed", be_seed},  {"out", be_out}};
            if (!be_bank.empty()) p["bank"] = be_bank;
            run_bench(p);
        } else if (replay->parsed()) {
            run_replay(rp_manifest, rp_out);
        }
    } catch (const cnoise::error& e) {
        std::cerr << e.code() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal-error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
