// sjlt: sparse Johnson-Lindenstrauss sketching, analysis and experiments.
//
// Exit codes are a stable contract: 0 ok, 2 bad configuration, 3 I/O
// failure, 4 bad data (malformed input, dimension mismatch), 5 an
// acceptance-style assertion failed.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sjlt/error.hpp"
#include "sjlt/experiment.hpp"
#include "sjlt/params.hpp"
#include "sjlt/psi.hpp"
#include "sjlt/sketcher.hpp"
#include "sjlt/speed_bench.hpp"
#include "sjlt/table_io.hpp"

namespace {

constexpr const char* kToolVersion = "1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitData = 4;
constexpr int kExitAcceptance = 5;

struct FamilyFlags {
    std::string family = "mixed";
    int char_bits = 8;
    int c = 2;
    int d = 2;
    std::uint32_t kwise = 2;

    void attach(CLI::App* cmd) {
        cmd->add_option("--family", family, "simple|mixed|poly|oracle");
        cmd->add_option("--char-bits", char_bits, "bits per character");
        cmd->add_option("--c", c, "characters per key");
        cmd->add_option("--d", d, "derived characters (mixed)");
        cmd->add_option("--kwise", kwise, "polynomial independence degree");
    }

    sjlt::FamilyConfig config(int bucket_bits, std::uint32_t blocks,
                              std::uint64_t seed) const {
        sjlt::FamilyConfig config;
        config.kind = sjlt::parse_family_kind(family);
        config.alphabet = sjlt::Alphabet{
            char_bits, c, config.kind == sjlt::FamilyKind::mixed ? d : 0};
        config.bucket_bits = bucket_bits;
        config.blocks = blocks;
        config.kwise = kwise;
        config.seed = seed;
        return config;
    }
};

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw sjlt::IoError("cannot open " + path + " for writing");
    out << body;
    if (!out) throw sjlt::IoError("write failed: " + path);
}

// Dense vector file: u64 little-endian length prefix, then f64 coordinates.
Eigen::VectorXd read_dense_vector(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sjlt::IoError("cannot open " + path);
    std::uint64_t length = 0;
    char prefix[8];
    in.read(prefix, 8);
    if (in.gcount() != 8) throw sjlt::DataError("dense vector: truncated length prefix");
    for (int i = 0; i < 8; ++i)
        length |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(prefix[i]))
                  << (8 * i);
    Eigen::VectorXd values(static_cast<Eigen::Index>(length));
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(length * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(length * sizeof(double)))
        throw sjlt::DataError("dense vector: truncated payload");
    return values;
}

void write_dense_vector(const std::string& path, const Eigen::VectorXd& values) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw sjlt::IoError("cannot open " + path + " for writing");
    const std::uint64_t length = static_cast<std::uint64_t>(values.size());
    for (int i = 0; i < 8; ++i)
        out.put(static_cast<char>((length >> (8 * i)) & 0xFF));
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(length * sizeof(double)));
    if (!out) throw sjlt::IoError("write failed: " + path);
}

// Sparse vector file: text lines "index value".
std::vector<sjlt::SparseEntry> read_sparse_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sjlt::IoError("cannot open " + path);
    std::vector<sjlt::SparseEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        sjlt::SparseEntry entry;
        if (!(fields >> entry.index >> entry.value))
            throw sjlt::DataError(path + ":" + std::to_string(line_no) +
                                  ": expected 'index value'");
        entries.push_back(entry);
    }
    return entries;
}

// Flat key=value config files; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sjlt::IoError("cannot open " + path);
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw sjlt::ConfigError(path + ":" + std::to_string(line_no) +
                                        ": expected key=value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto from = s.find_first_not_of(" \t\r");
            const auto to = s.find_last_not_of(" \t\r");
            return from == std::string::npos ? std::string()
                                             : s.substr(from, to - from + 1);
        };
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

int log2_exact(std::uint64_t value, const std::string& what) {
    if (value == 0 || (value & (value - 1)) != 0)
        throw sjlt::ConfigError(what + " must make m/s a power of two, got " +
                                std::to_string(value));
    int bits = 0;
    while ((std::uint64_t{1} << bits) < value) ++bits;
    return bits;
}

// ---------------------------------------------------------------------------

int cmd_params(double epsilon, double delta, double cm, double cs,
               const FamilyFlags& flags) {
    const auto kind = sjlt::parse_family_kind(flags.family);
    const sjlt::Alphabet alphabet{
        flags.char_bits, flags.c, kind == sjlt::FamilyKind::mixed ? flags.d : 0};
    const auto params = sjlt::suggest_params(epsilon, delta, kind, alphabet, cm, cs);
    nlohmann::json doc{{"tool_version", kToolVersion},
                       {"epsilon", params.epsilon},
                       {"delta", params.delta},
                       {"family", flags.family},
                       {"u", params.u},
                       {"m", params.m},
                       {"s", params.s},
                       {"r", params.bucket_bits()},
                       {"cm", cm},
                       {"cs", cs}};
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

int cmd_psi(double p, double scale, double sigma_sq) {
    const double value = sjlt::psi(p, scale, sigma_sq);
    std::printf("%.6f\n", value);
    return kExitOk;
}

int cmd_embed(const std::string& input_path, const std::string& input_format,
              const std::string& out_path, std::uint64_t m, std::uint32_t s,
              std::uint64_t seed, double epsilon, double delta,
              const FamilyFlags& flags, bool report_norm) {
    const auto kind = sjlt::parse_family_kind(flags.family);
    const sjlt::Alphabet alphabet{
        flags.char_bits, flags.c, kind == sjlt::FamilyKind::mixed ? flags.d : 0};

    sjlt::SjltParams params;
    params.u = alphabet.universe();
    params.m = m;
    params.s = s;
    params.epsilon = epsilon;
    params.delta = delta;
    params.validate();

    sjlt::InputVector vector = [&] {
        if (input_format == "dense")
            return sjlt::InputVector::dense(read_dense_vector(input_path));
        if (input_format == "sparse")
            return sjlt::InputVector::sparse(params.u, read_sparse_vector(input_path));
        throw sjlt::ConfigError("unknown input format '" + input_format + "'");
    }();

    const auto family_config =
        flags.config(params.bucket_bits(), params.s, seed);
    const sjlt::Sketcher sketcher(params, sjlt::build_family(family_config));
    const Eigen::VectorXd sketch = sketcher.embed(vector);
    write_dense_vector(out_path, sketch);

    const double norm_before = std::sqrt(vector.squared_norm());
    const double norm_after = sketch.norm();
    nlohmann::json sidecar{
        {"tool_version", kToolVersion},
        {"params",
         {{"u", params.u}, {"m", params.m}, {"s", params.s},
          {"epsilon", params.epsilon}, {"delta", params.delta}}},
        {"family",
         {{"kind", flags.family}, {"char_bits", flags.char_bits}, {"c", flags.c},
          {"d", kind == sjlt::FamilyKind::mixed ? flags.d : 0},
          {"kwise", flags.kwise}}},
        {"seed", seed},
        {"vector_id", input_path},
        {"norm_before", norm_before},
        {"norm_after", norm_after}};
    write_text_file(out_path + ".json", sidecar.dump(2) + "\n");

    if (report_norm) {
        const double z = norm_after * norm_after / (norm_before * norm_before) - 1.0;
        std::cout << "distortion " << z << "\n";
    }
    return kExitOk;
}

template <class T>
T config_get(const std::map<std::string, std::string>& config,
             const std::string& key, T fallback) {
    const auto it = config.find(key);
    if (it == config.end()) return fallback;
    std::istringstream in(it->second);
    T value;
    if (!(in >> value))
        throw sjlt::ConfigError("config: cannot parse " + key + "=" + it->second);
    return value;
}

std::string config_get_str(const std::map<std::string, std::string>& config,
                           const std::string& key, const std::string& fallback) {
    const auto it = config.find(key);
    return it == config.end() ? fallback : it->second;
}

int cmd_experiment(const std::string& config_path, const std::string& out_path,
                   const std::string& format, bool per_trial,
                   std::optional<std::uint64_t> seed_override,
                   std::optional<std::int64_t> trials_override) {
    const auto file = read_config_file(config_path);

    sjlt::DistortionConfig base;
    base.params.u = 0; // derived from the alphabet below
    base.params.m = config_get<std::uint64_t>(file, "m", 1024);
    base.params.s = config_get<std::uint32_t>(file, "s", 16);
    base.params.epsilon = config_get<double>(file, "epsilon", 0.25);
    base.params.delta = config_get<double>(file, "delta", 0.01);
    base.n_trials = trials_override.value_or(
        config_get<std::int64_t>(file, "trials", 10000));
    base.master_seed =
        seed_override.value_or(config_get<std::uint64_t>(file, "seed", 0));
    base.vector_seed = config_get<std::uint64_t>(file, "vector_seed", 1);

    const std::string vector_name = config_get_str(file, "vector", "dense_uniform");
    base.sparse_nnz = config_get<std::uint32_t>(file, "sparse_nnz", 64);
    base.vector_kind = sjlt::parse_vector_kind(vector_name, &base.sparse_nnz);

    FamilyFlags flags;
    flags.char_bits = config_get<int>(file, "char_bits", 8);
    flags.c = config_get<int>(file, "c", 2);
    flags.d = config_get<int>(file, "d", 2);
    flags.kwise = config_get<std::uint32_t>(file, "kwise", 2);

    if (base.n_trials <= 0) throw sjlt::ConfigError("experiment: trials must be > 0");

    const int bucket_bits =
        log2_exact(base.params.m / base.params.s, "m/s");

    // One family or a comma-separated comparison list.
    std::vector<std::string> family_names;
    {
        std::string families = config_get_str(
            file, "families", config_get_str(file, "family", "mixed"));
        std::stringstream splitter(families);
        std::string token;
        while (std::getline(splitter, token, ',')) family_names.push_back(token);
    }

    std::vector<sjlt::DistortionConfig> configs;
    for (const auto& name : family_names) {
        sjlt::DistortionConfig config = base;
        flags.family = name;
        config.family = flags.config(bucket_bits, base.params.s, 0);
        config.params.u = config.family.alphabet.universe();
        configs.push_back(config);
    }

    const double max_failure_rate =
        config_get<double>(file, "max_failure_rate", 1.0);

    nlohmann::json doc;
    bool acceptance_failed = false;
    if (configs.size() == 1) {
        const auto report = sjlt::run_distortion_experiment(configs.front());
        doc = sjlt::to_json(report, per_trial);
        acceptance_failed = report.failure_rate > max_failure_rate;
        if (format == "csv" && !out_path.empty())
            write_text_file(out_path, sjlt::to_csv(report, per_trial));
    } else {
        const auto comparison = sjlt::compare_families(configs);
        doc = sjlt::to_json(comparison);
        for (std::size_t i = 0; i < comparison.reports.size(); ++i) {
            if (comparison.reports[i].failure_rate > max_failure_rate)
                acceptance_failed = true;
            if (comparison.flagged[i]) acceptance_failed = true;
        }
    }
    doc["tool_version"] = kToolVersion;
    doc["config_file"] = config_path;
    doc["master_seed"] = base.master_seed;

    if (!out_path.empty() && format == "json")
        write_text_file(out_path, doc.dump(2) + "\n");
    std::cout << doc.dump(2) << "\n";
    return acceptance_failed ? kExitAcceptance : kExitOk;
}

int cmd_bench(const std::string& families_csv, std::int64_t n_keys, int repetitions,
              std::uint64_t seed, const std::string& out_path,
              const FamilyFlags& flags) {
    std::vector<sjlt::FamilyConfig> configs;
    std::stringstream splitter(families_csv);
    std::string token;
    while (std::getline(splitter, token, ',')) {
        FamilyFlags f = flags;
        f.family = token;
        configs.push_back(f.config(/*bucket_bits=*/10, /*blocks=*/1, seed));
    }
    const auto report = sjlt::run_speed_bench(configs, n_keys, repetitions, seed);
    nlohmann::json doc = sjlt::to_json(report);
    doc["tool_version"] = kToolVersion;

    bool guard_failed = false;
    try {
        const double ratio = sjlt::bench_time_ratio(report, "mixed", "simple");
        doc["mixed_over_simple"] = ratio;
        guard_failed = !(ratio < 10.0);
    } catch (const sjlt::ConfigError&) {
        // ratio only reported when both families were benchmarked
    }

    if (!out_path.empty()) write_text_file(out_path, doc.dump(2) + "\n");
    std::cout << doc.dump(2) << "\n";
    return guard_failed ? kExitAcceptance : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse Johnson-Lindenstrauss transform toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    // params
    auto* params_cmd = app.add_subcommand("params", "suggest (m, s) for a target");
    double epsilon = 0.25, delta = 0.01, cm = 4.0, cs = 2.0;
    FamilyFlags params_flags;
    params_cmd->add_option("--epsilon", epsilon, "distortion bound in (0,1)");
    params_cmd->add_option("--delta", delta, "failure probability in (0,1)");
    params_cmd->add_option("--cm", cm, "practical constant for m");
    params_cmd->add_option("--cs", cs, "practical constant for s");
    params_flags.attach(params_cmd);

    // psi
    auto* psi_cmd = app.add_subcommand("psi", "evaluate the Psi_p bound");
    double psi_p = 2.0, psi_m = 1.0, psi_sigma_sq = 1.0;
    psi_cmd->add_option("--p", psi_p, "moment order, >= 2")->required();
    psi_cmd->add_option("--m", psi_m, "scale bound M > 0")->required();
    psi_cmd->add_option("--sigma-sq", psi_sigma_sq, "variance proxy > 0")->required();

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "sketch a vector file");
    std::string embed_input, embed_out, embed_format = "dense";
    std::uint64_t embed_m = 1024, embed_seed = 0;
    std::uint32_t embed_s = 16;
    double embed_epsilon = 0.25, embed_delta = 0.01;
    bool report_norm = false;
    FamilyFlags embed_flags;
    embed_cmd->add_option("--input", embed_input, "vector file")->required();
    embed_cmd->add_option("--input-format", embed_format, "dense|sparse");
    embed_cmd->add_option("--out", embed_out, "sketch output path")->required();
    embed_cmd->add_option("--m", embed_m, "target dimension");
    embed_cmd->add_option("--s", embed_s, "nonzeros per column");
    embed_cmd->add_option("--seed", embed_seed, "family seed");
    embed_cmd->add_option("--epsilon", embed_epsilon, "metadata epsilon");
    embed_cmd->add_option("--delta", embed_delta, "metadata delta");
    embed_cmd->add_flag("--report-norm", report_norm, "print the distortion");
    embed_flags.attach(embed_cmd);

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "run a distortion experiment");
    std::string exp_config, exp_out, exp_format = "json";
    bool per_trial = false;
    std::optional<std::uint64_t> exp_seed;
    std::optional<std::int64_t> exp_trials;
    exp_cmd->add_option("--config", exp_config, "key=value config file")->required();
    exp_cmd->add_option("--out", exp_out, "report output path");
    exp_cmd->add_option("--format", exp_format, "json|csv");
    exp_cmd->add_flag("--per-trial", per_trial, "emit one row per trial");
    exp_cmd->add_option("--seed", exp_seed, "override the master seed");
    exp_cmd->add_option("--trials", exp_trials, "override the trial count");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "hashing speed benchmark");
    std::string bench_families = "simple,mixed";
    std::int64_t bench_keys = 1000000;
    int bench_reps = 5;
    std::uint64_t bench_seed = 0;
    std::string bench_out;
    FamilyFlags bench_flags;
    bench_cmd->add_option("--families", bench_families, "comma-separated list");
    bench_cmd->add_option("--keys", bench_keys, "keys per pass (>= 1e6)");
    bench_cmd->add_option("--reps", bench_reps, "timed repetitions");
    bench_cmd->add_option("--seed", bench_seed, "key sequence seed");
    bench_cmd->add_option("--out", bench_out, "report output path");
    bench_flags.attach(bench_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (params_cmd->parsed())
            return cmd_params(epsilon, delta, cm, cs, params_flags);
        if (psi_cmd->parsed()) return cmd_psi(psi_p, psi_m, psi_sigma_sq);
        if (embed_cmd->parsed())
            return cmd_embed(embed_input, embed_format, embed_out, embed_m, embed_s,
                             embed_seed, embed_epsilon, embed_delta, embed_flags,
                             report_norm);
        if (exp_cmd->parsed())
            return cmd_experiment(exp_config, exp_out, exp_format, per_trial,
                                  exp_seed, exp_trials);
        if (bench_cmd->parsed())
            return cmd_bench(bench_families, bench_keys, bench_reps, bench_seed,
                             bench_out, bench_flags);
        return kExitConfig;
    } catch (const sjlt::IoError& e) {
        std::cerr << "sjlt: io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const sjlt::DataError& e) {
        std::cerr << "sjlt: data error: " << e.what() << "\n";
        return kExitData;
    } catch (const sjlt::ConfigError& e) {
        std::cerr << "sjlt: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "sjlt: error: " << e.what() << "\n";
        return kExitConfig;
    }
}
