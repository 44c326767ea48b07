#include "sjlt/psi.hpp"

#include <algorithm>
#include <cmath>

#include "sjlt/error.hpp"

namespace sjlt {
namespace {

void check_inputs(double p, double scale, double sigma_sq) {
    if (!std::isfinite(p) || !std::isfinite(scale) || !std::isfinite(sigma_sq))
        throw DataError("psi: inputs must be finite");
    if (p < 2.0) throw DataError("psi: p must be >= 2");
    if (!(scale > 0.0)) throw DataError("psi: M must be > 0");
    if (!(sigma_sq > 0.0)) throw DataError("psi: sigma^2 must be > 0");
}

} // namespace

PsiValue psi_eval(double p, double scale, double sigma_sq) {
    check_inputs(p, scale, sigma_sq);
    const double ratio_log = std::log(p * scale * scale / sigma_sq);
    const double gaussian_cut = std::exp(2.0) * sigma_sq / (scale * scale);

    if (p < ratio_log)
        return {std::pow(sigma_sq / (p * scale * scale), 1.0 / p) * scale,
                PsiBranch::low_p};
    if (p < gaussian_cut)
        return {0.5 * std::sqrt(p) * std::sqrt(sigma_sq), PsiBranch::gaussian};
    if (p >= std::max(ratio_log, gaussian_cut))
        return {p / (std::exp(1.0) * ratio_log) * scale, PsiBranch::poisson_tail};

    // Unreachable in exact arithmetic; kept so rounding at a branch boundary
    // cannot leave the evaluator without a value.
    const double gaussian_value = 0.5 * std::sqrt(p) * std::sqrt(sigma_sq);
    const double tail_value = p / (std::exp(1.0) * ratio_log) * scale;
    return {std::max(gaussian_value, tail_value), PsiBranch::fallback};
}

bool psi_sandwich_ok(double p, double scale, double sigma_sq) {
    const double value = psi(p, scale, sigma_sq);
    const double lower = 0.5 * std::sqrt(p) * std::sqrt(sigma_sq);
    const double upper = std::max(lower, p * scale / (2.0 * std::exp(1.0)));
    constexpr double kSlack = 1e-12;
    return value >= lower * (1.0 - kSlack) && value <= upper * (1.0 + kSlack);
}

} // namespace sjlt
