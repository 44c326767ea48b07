#pragma once
// Desk-scale distortion experiments: fix a probe vector, redraw the hash
// family per trial, and estimate the probability that the squared norm is
// distorted by epsilon or more, with Wilson confidence intervals, a fixed
// histogram schema, and p-norm estimates of the distortion.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sjlt/family.hpp"
#include "sjlt/moments.hpp"
#include "sjlt/params.hpp"
#include "sjlt/test_vectors.hpp"

#include <json.hpp>

namespace sjlt {

// 95% Wilson score interval; stays honest at zero observed failures.
struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

WilsonInterval wilson_interval(std::int64_t failures, std::int64_t n_trials);

struct DistortionConfig {
    SjltParams params;
    FamilyConfig family;         // structural part; per-trial seeds are derived
    VectorKind vector_kind = VectorKind::dense_uniform;
    std::uint32_t sparse_nnz = 0;
    std::int64_t n_trials = 1000;
    std::uint64_t master_seed = 0;
    std::uint64_t vector_seed = 0;

    void validate() const;
};

constexpr int kHistogramBins = 81;   // uniform on Z in [-2, 2], ends clamp
constexpr std::array<double, 3> kReportMomentOrders = {2.0, 4.0, 8.0};

struct DistortionReport {
    DistortionConfig config;
    std::int64_t failures = 0;
    double failure_rate = 0.0;
    WilsonInterval ci95;
    std::array<std::int64_t, kHistogramBins> histogram{};
    std::vector<EmpiricalMoment> moments;   // of |Z| at kReportMomentOrders
    std::vector<double> distortions;        // per-trial Z, trial order
    double wall_time_sec = 0.0;
};

DistortionReport run_distortion_experiment(const DistortionConfig& config);

// Everything but wall_time_sec is a deterministic function of the config.
nlohmann::json to_json(const DistortionReport& report, bool include_trials = false);
std::string to_csv(const DistortionReport& report, bool include_trials = false);

struct FamilyComparison {
    std::vector<DistortionReport> reports;
    int baseline_index = -1;               // first oracle config, -1 if none
    std::vector<bool> flagged;             // rate > 2x baseline Wilson upper
};

// Same geometry, same probe vector, different families.
FamilyComparison compare_families(const std::vector<DistortionConfig>& configs);

nlohmann::json to_json(const FamilyComparison& comparison);

} // namespace sjlt
