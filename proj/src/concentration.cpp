#include "sjlt/concentration.hpp"

#include <cmath>
#include <vector>

#include <json.hpp>

#include "sjlt/error.hpp"
#include "sjlt/parallel.hpp"
#include "sjlt/psi.hpp"
#include "sjlt/rng.hpp"

namespace sjlt {

std::string concentration_kind_name(ConcentrationKind kind) {
    switch (kind) {
        case ConcentrationKind::sum_poisson: return "sum_poisson";
        case ConcentrationKind::sum_gauss: return "sum_gauss";
        case ConcentrationKind::square: return "square";
        case ConcentrationKind::max_bin: return "max";
    }
    throw ConfigError("unknown concentration kind");
}

ConcentrationKind parse_concentration_kind(const std::string& name) {
    if (name == "sum_poisson") return ConcentrationKind::sum_poisson;
    if (name == "sum_gauss") return ConcentrationKind::sum_gauss;
    if (name == "square") return ConcentrationKind::square;
    if (name == "max") return ConcentrationKind::max_bin;
    throw ConfigError("unknown concentration check '" + name + "'");
}

namespace {

void validate(const ConcentrationConfig& config, const FamilyConfig& family,
              double p) {
    if (!(p >= 2.0)) throw ConfigError("concentration: p must be >= 2");
    if (!(config.slack >= 1.0)) throw ConfigError("concentration: L must be >= 1");
    if (config.n_trials < 2)
        throw ConfigError("concentration: need at least 2 trials");
    if (!config.value_fn.allFinite() || !config.weights.allFinite())
        throw DataError("concentration: v and w must be finite");
    const std::uint64_t m =
        static_cast<std::uint64_t>(family.blocks) << family.bucket_bits;
    if ((config.which == ConcentrationKind::sum_poisson ||
         config.which == ConcentrationKind::sum_gauss) &&
        static_cast<std::uint64_t>(config.value_fn.size()) != m)
        throw ConfigError("concentration: value function must have s*(m/s) entries");
    if (static_cast<std::uint64_t>(config.weights.size()) >
        family.alphabet.universe())
        throw ConfigError("concentration: weight vector larger than the universe");
    if (config.which == ConcentrationKind::max_bin &&
        p > std::log(static_cast<double>(m)))
        throw ConfigError("concentration: max check requires p <= log m");
}

// Bucket sums b(i,j) = sum_x sign(i,x) 1[h(i,x)=j] w_x for one family draw.
template <class Family>
Eigen::VectorXd bucket_sums(const Family& family, const Eigen::VectorXd& weights,
                            std::uint64_t rows_per_block) {
    const std::uint32_t blocks = family.blocks();
    Eigen::VectorXd bins =
        Eigen::VectorXd::Zero(static_cast<Eigen::Index>(blocks * rows_per_block));
    std::vector<BucketSign> slots(blocks);
    for (Eigen::Index x = 0; x < weights.size(); ++x) {
        const double w = weights[x];
        if (w == 0.0) continue;
        family.eval_blocks(static_cast<std::uint64_t>(x),
                           std::span<BucketSign>(slots));
        for (std::uint32_t i = 0; i < blocks; ++i)
            bins[static_cast<Eigen::Index>(i * rows_per_block + slots[i].bucket)] +=
                static_cast<double>(slots[i].sign) * w;
    }
    return bins;
}

// Monomorphized per concrete family so the block evaluation inlines into
// the key loop.
template <class Family>
double trial_statistic(const ConcentrationConfig& config, const Family& family,
                       std::uint64_t rows_per_block) {
    switch (config.which) {
        case ConcentrationKind::sum_poisson:
        case ConcentrationKind::sum_gauss: {
            // sum_i sum_x sign(i,x) v(i, h(i,x)) w_x
            double acc = 0.0;
            const std::uint32_t blocks = family.blocks();
            std::vector<BucketSign> slots(blocks);
            for (Eigen::Index x = 0; x < config.weights.size(); ++x) {
                const double w = config.weights[x];
                if (w == 0.0) continue;
                family.eval_blocks(static_cast<std::uint64_t>(x),
                                   std::span<BucketSign>(slots));
                for (std::uint32_t i = 0; i < blocks; ++i) {
                    const double v = config.value_fn[static_cast<Eigen::Index>(
                        i * rows_per_block + slots[i].bucket)];
                    acc += static_cast<double>(slots[i].sign) * v * w;
                }
            }
            return acc;
        }
        case ConcentrationKind::square:
            return bucket_sums(family, config.weights, rows_per_block).squaredNorm();
        case ConcentrationKind::max_bin:
            return bucket_sums(family, config.weights, rows_per_block)
                .cwiseAbs()
                .maxCoeff();
    }
    throw ConfigError("unknown concentration kind");
}

double closed_form_rhs(const ConcentrationConfig& config, const FamilyConfig& family,
                       double p) {
    const double s = static_cast<double>(family.blocks);
    const double m = s * static_cast<double>(std::uint64_t{1} << family.bucket_bits);
    const double log_rows = std::log(m / s);
    const double w_norm_sq = config.weights.squaredNorm();
    const double L = config.slack;
    switch (config.which) {
        case ConcentrationKind::sum_poisson: {
            const double v_inf = config.value_fn.cwiseAbs().maxCoeff();
            const double w_inf = config.weights.cwiseAbs().maxCoeff();
            return psi(p, L * v_inf * w_inf,
                       L * (s / m) * config.value_fn.squaredNorm() * w_norm_sq);
        }
        case ConcentrationKind::sum_gauss:
            return std::sqrt(L * p / log_rows * config.value_fn.squaredNorm() *
                             w_norm_sq);
        case ConcentrationKind::square:
            return L * std::max(s, p / log_rows) * w_norm_sq;
        case ConcentrationKind::max_bin:
            return std::exp(1.0) * std::sqrt(L * std::log(m) / log_rows) *
                   std::sqrt(w_norm_sq);
    }
    throw ConfigError("unknown concentration kind");
}

} // namespace

ConcentrationReport run_concentration_check(const ConcentrationConfig& config,
                                            const FamilyConfig& family, double p) {
    validate(config, family, p);
    const std::uint64_t rows_per_block = std::uint64_t{1} << family.bucket_bits;

    std::vector<double> samples(static_cast<std::size_t>(config.n_trials));
    parallel_for(config.n_trials, [&](std::int64_t trial) {
        const HashFamily drawn = build_family(family.with_seed(
            derive_seed(config.master_seed, static_cast<std::uint64_t>(trial))));
        samples[static_cast<std::size_t>(trial)] = drawn.visit([&](const auto& f) {
            return trial_statistic(config, f, rows_per_block);
        });
    });

    // The square inequality bounds the p/2-norm of the squared sums.
    const double norm_index =
        config.which == ConcentrationKind::square ? p / 2.0 : p;

    ConcentrationReport report;
    report.which = config.which;
    report.p = p;
    report.slack = config.slack;
    report.n_trials = config.n_trials;
    report.lhs = empirical_pnorm(samples, norm_index);
    report.rhs = closed_form_rhs(config, family, p);
    report.margin = report.rhs - report.lhs.estimate;
    report.pass = report.lhs.estimate <= report.rhs;
    return report;
}

nlohmann::json to_json(const ConcentrationReport& report) {
    return nlohmann::json{{"which", concentration_kind_name(report.which)},
                          {"p", report.p},
                          {"L", report.slack},
                          {"n_trials", report.n_trials},
                          {"lhs", report.lhs.estimate},
                          {"std_error", report.lhs.std_error},
                          {"rhs", report.rhs},
                          {"margin", report.margin},
                          {"pass", report.pass}};
}

} // namespace sjlt
