#include "sjlt/moments.hpp"

#include <cmath>

#include "sjlt/error.hpp"

namespace sjlt {

EmpiricalMoment empirical_pnorm(std::span<const double> samples, double p) {
    if (p < 1.0) throw DataError("empirical_pnorm: p must be >= 1");
    const std::int64_t n = static_cast<std::int64_t>(samples.size());
    if (n < 2) throw DataError("empirical_pnorm: need at least 2 samples");

    std::vector<double> powered(samples.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i]))
            throw DataError("empirical_pnorm: non-finite sample");
        powered[i] = std::pow(std::abs(samples[i]), p);
        sum += powered[i];
    }
    const double estimate = std::pow(sum / static_cast<double>(n), 1.0 / p);

    // Jackknife over leave-one-out estimates.
    double mean_loo = 0.0;
    std::vector<double> loo(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        loo[i] = std::pow((sum - powered[i]) / static_cast<double>(n - 1), 1.0 / p);
        mean_loo += loo[i];
    }
    mean_loo /= static_cast<double>(n);
    double var = 0.0;
    for (double v : loo) var += (v - mean_loo) * (v - mean_loo);
    const double std_error =
        std::sqrt(var * static_cast<double>(n - 1) / static_cast<double>(n));

    return {p, n, estimate, std_error};
}

EmpiricalMoment empirical_pnorm(const std::function<double()>& sampler, double p,
                                std::int64_t n_trials) {
    if (n_trials < 2) throw DataError("empirical_pnorm: need at least 2 trials");
    std::vector<double> samples(static_cast<std::size_t>(n_trials));
    for (auto& s : samples) s = sampler();
    return empirical_pnorm(samples, p);
}

} // namespace sjlt
