#include "sjlt/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "sjlt/error.hpp"
#include "sjlt/parallel.hpp"
#include "sjlt/rng.hpp"
#include "sjlt/sketcher.hpp"

namespace sjlt {

WilsonInterval wilson_interval(std::int64_t failures, std::int64_t n_trials) {
    if (n_trials < 1) throw DataError("wilson: need at least one trial");
    if (failures < 0 || failures > n_trials)
        throw DataError("wilson: failures out of range");
    constexpr double z = 1.959963984540054; // 97.5% normal quantile
    const double n = static_cast<double>(n_trials);
    const double rate = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (rate + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(rate * (1.0 - rate) / n + z2 / (4.0 * n * n)) / denom;
    WilsonInterval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
    // center - half is exactly 0 (or 1) at the boundary counts; keep it so
    // despite rounding.
    if (failures == 0) ci.lo = 0.0;
    if (failures == n_trials) ci.hi = 1.0;
    return ci;
}

void DistortionConfig::validate() const {
    params.validate();
    if (n_trials < 100)
        throw ConfigError("experiment: need n_trials >= 100 for rate estimation");
    if (family.alphabet.universe() != params.u)
        throw ConfigError("experiment: family alphabet does not match params.u");
    if (family.blocks != params.s ||
        family.bucket_bits != params.bucket_bits())
        throw ConfigError("experiment: family geometry does not match params");
}

namespace {

int histogram_bin(double z) {
    const double scaled = (z + 2.0) / 4.0 * kHistogramBins;
    const int bin = static_cast<int>(std::floor(scaled));
    return std::clamp(bin, 0, kHistogramBins - 1);
}

nlohmann::json config_json(const DistortionConfig& c) {
    return nlohmann::json{
        {"u", c.params.u},
        {"m", c.params.m},
        {"s", c.params.s},
        {"epsilon", c.params.epsilon},
        {"delta", c.params.delta},
        {"family", family_kind_name(c.family.kind)},
        {"char_bits", c.family.alphabet.char_bits},
        {"c", c.family.alphabet.c},
        {"d", c.family.alphabet.derived_d},
        {"kwise", c.family.kwise},
        {"vector", vector_kind_name(c.vector_kind)},
        {"sparse_nnz", c.sparse_nnz},
        {"n_trials", c.n_trials},
        {"master_seed", c.master_seed},
        {"vector_seed", c.vector_seed}};
}

} // namespace

DistortionReport run_distortion_experiment(const DistortionConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    const InputVector probe = make_test_vector(config.vector_kind, config.params.u,
                                               config.vector_seed, config.sparse_nnz);

    std::vector<double> distortions(static_cast<std::size_t>(config.n_trials));
    parallel_for(config.n_trials, [&](std::int64_t trial) {
        const Sketcher sketcher(
            config.params,
            build_family(config.family.with_seed(derive_seed(
                config.master_seed, static_cast<std::uint64_t>(trial)))));
        distortions[static_cast<std::size_t>(trial)] = sketcher.distortion(probe);
    });

    DistortionReport report;
    report.config = config;
    report.distortions = std::move(distortions);
    for (double z : report.distortions) {
        if (std::abs(z) >= config.params.epsilon) ++report.failures;
        ++report.histogram[static_cast<std::size_t>(histogram_bin(z))];
    }
    report.failure_rate = static_cast<double>(report.failures) /
                          static_cast<double>(config.n_trials);
    report.ci95 = wilson_interval(report.failures, config.n_trials);
    for (double order : kReportMomentOrders)
        report.moments.push_back(empirical_pnorm(report.distortions, order));
    report.wall_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

nlohmann::json to_json(const DistortionReport& report, bool include_trials) {
    nlohmann::json moments = nlohmann::json::array();
    for (const auto& m : report.moments)
        moments.push_back({{"p", m.p},
                           {"estimate", m.estimate},
                           {"std_error", m.std_error},
                           {"n_trials", m.n_trials}});
    nlohmann::json out{{"config", config_json(report.config)},
                       {"failures", report.failures},
                       {"failure_rate", report.failure_rate},
                       {"wilson_ci95", {report.ci95.lo, report.ci95.hi}},
                       {"histogram", report.histogram},
                       {"moments", moments},
                       {"wall_time_sec", report.wall_time_sec}};
    if (include_trials) out["trials"] = report.distortions;
    return out;
}

std::string to_csv(const DistortionReport& report, bool include_trials) {
    std::ostringstream out;
    out.precision(17);
    out << "family,vector,u,m,s,epsilon,n_trials,master_seed,failures,"
           "failure_rate,wilson_lo,wilson_hi\n";
    const auto& c = report.config;
    out << family_kind_name(c.family.kind) << ',' << vector_kind_name(c.vector_kind)
        << ',' << c.params.u << ',' << c.params.m << ',' << c.params.s << ','
        << c.params.epsilon << ',' << c.n_trials << ',' << c.master_seed << ','
        << report.failures << ',' << report.failure_rate << ',' << report.ci95.lo
        << ',' << report.ci95.hi << '\n';
    if (include_trials) {
        out << "trial,distortion,failure\n";
        for (std::size_t t = 0; t < report.distortions.size(); ++t)
            out << t << ',' << report.distortions[t] << ','
                << (std::abs(report.distortions[t]) >= c.params.epsilon ? 1 : 0)
                << '\n';
    }
    return out.str();
}

FamilyComparison compare_families(const std::vector<DistortionConfig>& configs) {
    if (configs.empty()) throw ConfigError("compare: need at least one config");
    const auto& head = configs.front();
    for (const auto& c : configs) {
        if (c.params.u != head.params.u || c.params.m != head.params.m ||
            c.params.s != head.params.s || c.params.epsilon != head.params.epsilon ||
            c.n_trials != head.n_trials || c.vector_kind != head.vector_kind ||
            c.sparse_nnz != head.sparse_nnz)
            throw ConfigError("compare: configs must differ only in family");
    }

    FamilyComparison out;
    out.reports.reserve(configs.size());
    for (const auto& c : configs) out.reports.push_back(run_distortion_experiment(c));
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (configs[i].family.kind == FamilyKind::oracle) {
            out.baseline_index = static_cast<int>(i);
            break;
        }
    }
    out.flagged.assign(configs.size(), false);
    if (out.baseline_index >= 0) {
        const double bound =
            2.0 * out.reports[static_cast<std::size_t>(out.baseline_index)].ci95.hi;
        for (std::size_t i = 0; i < out.reports.size(); ++i)
            out.flagged[i] = out.reports[i].failure_rate > bound;
    }
    return out;
}

nlohmann::json to_json(const FamilyComparison& comparison) {
    nlohmann::json reports = nlohmann::json::array();
    for (std::size_t i = 0; i < comparison.reports.size(); ++i) {
        nlohmann::json entry = to_json(comparison.reports[i]);
        entry["flagged"] = static_cast<bool>(comparison.flagged[i]);
        reports.push_back(std::move(entry));
    }
    return nlohmann::json{{"baseline_index", comparison.baseline_index},
                          {"reports", reports}};
}

} // namespace sjlt
