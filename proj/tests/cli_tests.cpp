// Exercises the installed CLI binary end to end: exit codes, output
// schemas, file formats, and determinism. Expects the binary path as the
// first argument.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_dir;
int g_failures = 0;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

RunResult run(const std::string& args) {
    const fs::path out_file = g_dir / "stdout.txt";
    const std::string command =
        g_cli + " " + args + " > " + out_file.string() + " 2>&1";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    return result;
}

void expect(bool condition, const std::string& label) {
    if (!condition) {
        std::cerr << "FAIL: " << label << "\n";
        ++g_failures;
    }
}

void expect_exit(const RunResult& result, int code, const std::string& label) {
    if (result.exit_code != code) {
        std::cerr << "FAIL: " << label << ": exit " << result.exit_code
                  << " (wanted " << code << ")\noutput:\n"
                  << result.out << "\n";
        ++g_failures;
    }
}

void write_dense_file(const fs::path& path, const std::vector<double>& values) {
    std::ofstream out(path, std::ios::binary);
    const std::uint64_t length = values.size();
    for (int i = 0; i < 8; ++i)
        out.put(static_cast<char>((length >> (8 * i)) & 0xFF));
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
}

void test_params() {
    auto result = run("params --epsilon 0.5 --delta 0.5 --cm 1 --cs 1");
    expect_exit(result, 0, "params basic");
    const auto doc = nlohmann::json::parse(result.out, nullptr, false);
    expect(!doc.is_discarded(), "params emits json");
    expect(doc["s"] == 2, "params s=2");
    expect(doc["m"] == 4, "params m=4");

    auto second = run("params --epsilon 0.5 --delta 0.5 --cm 1 --cs 1");
    expect(second.out == result.out, "params deterministic");

    auto invalid = run("params --epsilon 1.5 --delta 0.5");
    expect_exit(invalid, 2, "params epsilon out of range");
    expect(invalid.out.find("epsilon must be in (0,1)") != std::string::npos,
           "params error message");

    auto unknown_flag = run("params --no-such-flag 3");
    expect_exit(unknown_flag, 2, "unknown flag rejected");
}

void test_psi() {
    auto result = run("psi --p 2 --m 1 --sigma-sq 1");
    expect_exit(result, 0, "psi basic");
    expect(result.out == "0.707107\n", "psi prints 0.707107");
}

void test_embed() {
    const fs::path basis = g_dir / "basis.vec";
    std::vector<double> values(1 << 16, 0.0);
    values[17] = 1.0;
    write_dense_file(basis, values);

    const fs::path sketch = g_dir / "sketch.bin";
    const std::string common = " --m 1024 --s 16 --family mixed --seed 5 --out " +
                               sketch.string() + " --input " + basis.string();
    auto result = run("embed" + common + " --report-norm");
    expect_exit(result, 0, "embed basis");

    const auto sidecar =
        nlohmann::json::parse(slurp(sketch.string() + ".json"), nullptr, false);
    expect(!sidecar.is_discarded(), "sidecar is json");
    const double norm_after = sidecar["norm_after"].get<double>();
    expect(std::abs(norm_after - 1.0) <= 1e-12, "basis norm_after = 1");
    expect(sidecar["seed"] == 5, "sidecar echoes seed");
    expect(sidecar.contains("params"), "sidecar echoes params");

    const std::string first_bytes = slurp(sketch);
    auto rerun = run("embed" + common);
    expect_exit(rerun, 0, "embed rerun");
    expect(slurp(sketch) == first_bytes, "same seed gives identical sketch bytes");

    // Same vector in sparse text form embeds to identical bytes.
    const fs::path sparse = g_dir / "basis.txt";
    std::ofstream(sparse) << "17 1.0\n";
    const fs::path sketch2 = g_dir / "sketch2.bin";
    auto sparse_run = run("embed --input " + sparse.string() +
                          " --input-format sparse --m 1024 --s 16 --family mixed"
                          " --seed 5 --out " + sketch2.string());
    expect_exit(sparse_run, 0, "embed sparse");
    expect(slurp(sketch2) == first_bytes, "sparse and dense sketches identical");

    // Dimension mismatch: vector of the wrong length.
    const fs::path wrong = g_dir / "wrong.vec";
    write_dense_file(wrong, std::vector<double>(100, 0.5));
    auto mismatch = run("embed --input " + wrong.string() +
                        " --m 1024 --s 16 --out " + (g_dir / "w.bin").string());
    expect_exit(mismatch, 4, "dimension mismatch exits 4");

    auto missing = run("embed --input " + (g_dir / "absent.vec").string() +
                       " --m 1024 --s 16 --out " + (g_dir / "x.bin").string());
    expect_exit(missing, 3, "missing input exits 3");
}

void test_experiment() {
    const fs::path config = g_dir / "exp.cfg";
    std::ofstream(config) << "family = oracle\n"
                          << "char_bits = 4\n"
                          << "c = 2\n"
                          << "m = 64\n"
                          << "s = 4\n"
                          << "epsilon = 0.25\n"
                          << "trials = 400\n"
                          << "vector = basis\n"
                          << "seed = 9\n";
    const fs::path report = g_dir / "report.json";
    auto result = run("experiment --config " + config.string() + " --out " +
                      report.string());
    expect_exit(result, 0, "experiment basis");
    const auto doc = nlohmann::json::parse(slurp(report), nullptr, false);
    expect(!doc.is_discarded(), "experiment report is json");
    expect(doc["failure_rate"] == 0.0, "basis never fails");
    expect(doc["config"]["master_seed"] == 9, "report echoes master seed");
    expect(doc["tool_version"] == "1.0.0", "report carries tool version");

    auto rerun = run("experiment --config " + config.string());
    const auto doc2 = nlohmann::json::parse(rerun.out, nullptr, false);
    auto strip = [](nlohmann::json d) {
        d.erase("wall_time_sec");
        return d.dump();
    };
    expect(strip(doc) == strip(doc2), "experiment reproducible from config");

    auto zero_trials = run("experiment --config " + config.string() + " --trials 0");
    expect_exit(zero_trials, 2, "zero trials exits 2");

    // A threshold the basis run trivially satisfies, then one it cannot.
    std::ofstream(config, std::ios::app) << "max_failure_rate = 0.5\n";
    expect_exit(run("experiment --config " + config.string()), 0,
                "threshold satisfied");
    const fs::path strict = g_dir / "strict.cfg";
    std::ofstream(strict) << "family = oracle\nchar_bits = 4\nc = 2\n"
                          << "m = 4\ns = 1\nepsilon = 0.01\ntrials = 400\n"
                          << "vector = dense_uniform\nseed = 3\n"
                          << "max_failure_rate = 0.0001\n";
    expect_exit(run("experiment --config " + strict.string()), 5,
                "acceptance threshold failure exits 5");
}

void test_bench() {
    auto result = run("bench --families simple,mixed --keys 1000000 --reps 3");
    expect_exit(result, 0, "bench simple,mixed");
    const auto doc = nlohmann::json::parse(result.out, nullptr, false);
    expect(!doc.is_discarded(), "bench emits json");
    expect(doc["entries"][0]["lookups_per_key"] == 2, "simple lookups");
    expect(doc["entries"][1]["lookups_per_key"] == 4, "mixed lookups");
    expect(doc.contains("mixed_over_simple"), "ratio reported");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-sjlt-binary>\n";
        return 2;
    }
    g_cli = argv[1];
    g_dir = fs::temp_directory_path() / "sjlt_cli_tests";
    fs::create_directories(g_dir);

    test_params();
    test_psi();
    test_embed();
    test_experiment();
    test_bench();

    if (g_failures == 0) {
        std::cout << "cli tests passed\n";
        return 0;
    }
    std::cerr << g_failures << " cli test(s) failed\n";
    return 1;
}
