#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace sjlt {

// Monte Carlo estimate of ||X||_p = E[|X|^p]^(1/p) with a jackknife
// standard error.
struct EmpiricalMoment {
    double p = 0.0;
    std::int64_t n_trials = 0;
    double estimate = 0.0;
    double std_error = 0.0;
};

// Requires p >= 1, at least 2 finite samples.
EmpiricalMoment empirical_pnorm(std::span<const double> samples, double p);

EmpiricalMoment empirical_pnorm(const std::function<double()>& sampler, double p,
                                std::int64_t n_trials);

} // namespace sjlt
