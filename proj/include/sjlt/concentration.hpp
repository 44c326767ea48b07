#pragma once
// Monte Carlo checkers for the four strong-concentration inequalities a
// (hash, sign) pair should satisfy for the sparse JL analysis to go
// through. The universal constant in the inequalities is unquantified, so
// checks take a slack L and report margins rather than hard-fail.

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "sjlt/family.hpp"
#include "sjlt/moments.hpp"

#include <json.hpp>

namespace sjlt {

enum class ConcentrationKind { sum_poisson, sum_gauss, square, max_bin };

std::string concentration_kind_name(ConcentrationKind kind);
ConcentrationKind parse_concentration_kind(const std::string& name);

struct ConcentrationConfig {
    ConcentrationKind which = ConcentrationKind::sum_gauss;
    Eigen::VectorXd value_fn;     // over [s] x [m/s], laid out i*(m/s)+j
    Eigen::VectorXd weights;      // over keys 0..|w|-1 (a subset of [u])
    double slack = 1.0;           // L >= 1
    std::int64_t n_trials = 1000;
    std::uint64_t master_seed = 0;
};

struct ConcentrationReport {
    ConcentrationKind which = ConcentrationKind::sum_gauss;
    double p = 0.0;
    double slack = 0.0;
    std::int64_t n_trials = 0;
    EmpiricalMoment lhs;
    double rhs = 0.0;
    double margin = 0.0;          // rhs - lhs.estimate
    bool pass = false;
};

// One statistic per trial, each trial under a family rebuilt from
// derive_seed(master_seed, trial); p-norm of the statistic versus the
// closed-form right-hand side. The max_bin check requires p <= log m.
ConcentrationReport run_concentration_check(const ConcentrationConfig& config,
                                            const FamilyConfig& family, double p);

nlohmann::json to_json(const ConcentrationReport& report);

} // namespace sjlt
