#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cnoise/bank.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = CNOISE_CLI_PATH;

struct RunResult {
    int exit_code = -1;
    std::string stderr_text;
};

RunResult run(const std::string& args) {
    fs::path err = fs::temp_directory_path() / "cnoise_cli_stderr.txt";
    std::string cmd = cli + " " + args + " >/dev/null 2>" + err.string();
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    std::ifstream in(err);
    std::stringstream ss;
    ss << in.rdbuf();
    r.stderr_text = ss.str();
    return r;
}

std::vector<char> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct ScratchDir {
    fs::path path;
    ScratchDir() {
        path = fs::temp_directory_path() / ("cnoise_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("gen-bank writes a valid, reproducible bank file") {
    ScratchDir dir;
    fs::path a = dir.path / "a.cnbk", b = dir.path / "b.cnbk";
    std::string flags = "gen-bank --color green --count 4 --side 64 --seed 1 --out ";
    REQUIRE(run(flags + a.string()).exit_code == 0);
    REQUIRE(run(flags + b.string()).exit_code == 0);

    REQUIRE(fs::file_size(a) == cnoise::bank_format::file_bytes(4, 64));
    REQUIRE(slurp(a) == slurp(b));

    cnoise::NoiseBank bank = cnoise::load_bank(a);
    REQUIRE(bank.color.kind == cnoise::NoiseKind::green);
    REQUIRE(bank.count == 4);
}

TEST_CASE("gen-bank rejects inverted sigmas with a named error") {
    ScratchDir dir;
    RunResult r = run("gen-bank --color green --count 1 --side 64 --sigma1 4 --sigma2 1 --out " +
                      (dir.path / "x.cnbk").string());
    REQUIRE(r.exit_code != 0);
    REQUIRE(r.stderr_text.find("invalid-parameter") != std::string::npos);
}

TEST_CASE("gen-masks grid emits the deterministic 147-ones pattern") {
    ScratchDir dir;
    fs::path out = dir.path / "masks";
    REQUIRE(run("gen-masks --strategy grid --patches 196 --batch 3 --out " + out.string())
                .exit_code == 0);
    std::ifstream csv(out / "masks.csv");
    std::string line;
    int rows = 0;
    while (std::getline(csv, line)) {
        int ones = 0;
        for (char c : line) ones += c == '1';
        REQUIRE(ones == 147);
        rows++;
    }
    REQUIRE(rows == 3);
    REQUIRE(fs::exists(out / "mask_row0.png"));
    REQUIRE(fs::exists(out / "manifest.json"));
}

TEST_CASE("gen-masks color strategy works against a bank file") {
    ScratchDir dir;
    fs::path bank = dir.path / "g.cnbk";
    REQUIRE(run("gen-bank --color green --count 4 --side 64 --seed 1 --out " + bank.string())
                .exit_code == 0);
    fs::path out = dir.path / "masks";
    REQUIRE(run("gen-masks --strategy color --bank " + bank.string() +
                " --ratio 0.75 --batch 8 --patches 196 --out " + out.string())
                .exit_code == 0);
    std::ifstream csv(out / "masks.csv");
    std::string line;
    int rows = 0;
    while (std::getline(csv, line)) {
        int ones = 0;
        for (char c : line) ones += c == '1';
        REQUIRE(ones == 147);
        rows++;
    }
    REQUIRE(rows == 8);
}

TEST_CASE("gen-masks rejects ratio > 1") {
    ScratchDir dir;
    RunResult r = run("gen-masks --strategy random --patches 16 --ratio 1.5 --out " +
                      (dir.path / "m").string());
    REQUIRE(r.exit_code != 0);
    REQUIRE(r.stderr_text.find("invalid-parameter") != std::string::npos);
}

TEST_CASE("analyze reports a missing bank file by name") {
    ScratchDir dir;
    RunResult r = run("analyze --bank " + (dir.path / "missing.cnbk").string() + " --out " +
                      (dir.path / "a").string());
    REQUIRE(r.exit_code != 0);
    REQUIRE(r.stderr_text.find("file-not-found") != std::string::npos);
}

TEST_CASE("analyze emits radial CSV, band report, and periodogram PNG") {
    ScratchDir dir;
    fs::path bank = dir.path / "w.cnbk";
    REQUIRE(run("gen-bank --color white --count 8 --side 64 --seed 3 --out " + bank.string())
                .exit_code == 0);
    fs::path out = dir.path / "analysis";
    REQUIRE(run("analyze --bank " + bank.string() + " --out " + out.string()).exit_code == 0);
    REQUIRE(fs::exists(out / "radial.csv"));
    REQUIRE(fs::exists(out / "band.json"));
    REQUIRE(fs::exists(out / "periodogram.png"));

    std::ifstream csv(out / "radial.csv");
    std::string header;
    std::getline(csv, header);
    REQUIRE(header.rfind("radius,mean_power", 0) == 0);
}

TEST_CASE("stats command writes a report") {
    ScratchDir dir;
    fs::path out = dir.path / "st";
    REQUIRE(run("stats --strategy random --patches 196 --rows 200 --out " + out.string())
                .exit_code == 0);
    REQUIRE(fs::exists(out / "stats.json"));
    REQUIRE(fs::exists(out / "cluster_hist.png"));
}

TEST_CASE("bench rejects zero iterations") {
    ScratchDir dir;
    RunResult r = run("bench --iterations 0 --out " + (dir.path / "b").string());
    REQUIRE(r.exit_code != 0);
    REQUIRE(r.stderr_text.find("invalid-parameter") != std::string::npos);
}

TEST_CASE("replay reproduces gen-masks outputs bit-exactly") {
    ScratchDir dir;
    fs::path out1 = dir.path / "run1", out2 = dir.path / "run2";
    REQUIRE(run("gen-masks --strategy random --patches 196 --batch 4 --seed 9 --out " +
                out1.string())
                .exit_code == 0);
    REQUIRE(run("replay " + (out1 / "manifest.json").string() + " --out " + out2.string())
                .exit_code == 0);
    for (const char* f : {"masks.csv", "mask_row0.png", "batch.json"})
        REQUIRE(slurp(out1 / f) == slurp(out2 / f));
}
