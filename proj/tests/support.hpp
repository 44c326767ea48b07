#pragma once
// Test-only oracles, independent of the library code paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace testsupport {

// Regularized upper incomplete gamma Q(a, x) via series / continued
// fraction (Numerical Recipes style); used for chi-square p-values.
inline double regularized_gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q domain");
    if (x == 0.0) return 1.0;
    const double log_gamma_a = std::lgamma(a);
    if (x < a + 1.0) {
        // P(a,x) by series, Q = 1 - P.
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int n = 0; n < 500; ++n) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - log_gamma_a);
        return 1.0 - p;
    }
    // Q(a,x) by Lentz continued fraction.
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - log_gamma_a) * h;
}

// p-value of a chi-square statistic with the given degrees of freedom.
inline double chi_square_pvalue(double statistic, int dof) {
    return regularized_gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

// Pearson statistic against a uniform expectation over `cells`.
inline double chi_square_uniform(const std::vector<std::int64_t>& counts,
                                 std::int64_t total) {
    const double expected =
        static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (std::int64_t count : counts) {
        const double diff = static_cast<double>(count) - expected;
        stat += diff * diff / expected;
    }
    return stat;
}

// Exhaustive CountSketch-style oracle: enumerates every (bucket, sign)
// assignment over [s] x [u] (uniform, independent), embeds w with the block
// layout i*(m/s)+bucket and scale 1/sqrt(s), and accumulates the exact
// failure probability of {|Z| >= eps} and the exact E[Z^2].
struct EnumeratedDistortion {
    double failure_probability = 0.0;
    double second_moment = 0.0;
    std::uint64_t outcomes = 0;
};

inline EnumeratedDistortion enumerate_distortion(const std::vector<double>& w,
                                                 std::uint32_t blocks,
                                                 std::uint32_t rows_per_block,
                                                 double epsilon) {
    const std::uint32_t u = static_cast<std::uint32_t>(w.size());
    const std::uint32_t slots = blocks * u;
    // bucket bits per slot + one sign bit per slot
    double bits = slots * (std::log2(static_cast<double>(rows_per_block)) + 1.0);
    if (bits > 26.0) throw std::invalid_argument("enumeration too large");

    double w_norm_sq = 0.0;
    for (double v : w) w_norm_sq += v * v;
    const double scale = 1.0 / std::sqrt(static_cast<double>(blocks));

    std::uint64_t bucket_states = 1;
    for (std::uint32_t i = 0; i < slots; ++i) bucket_states *= rows_per_block;
    const std::uint64_t sign_states = std::uint64_t{1} << slots;

    EnumeratedDistortion out;
    std::vector<std::uint32_t> bucket(slots);
    std::vector<double> y(blocks * rows_per_block);
    for (std::uint64_t bs = 0; bs < bucket_states; ++bs) {
        std::uint64_t acc = bs;
        for (std::uint32_t slot = 0; slot < slots; ++slot) {
            bucket[slot] = static_cast<std::uint32_t>(acc % rows_per_block);
            acc /= rows_per_block;
        }
        for (std::uint64_t ss = 0; ss < sign_states; ++ss) {
            std::fill(y.begin(), y.end(), 0.0);
            for (std::uint32_t x = 0; x < u; ++x) {
                if (w[x] == 0.0) continue;
                for (std::uint32_t i = 0; i < blocks; ++i) {
                    const std::uint32_t slot = i * u + x;
                    const double sign = (ss >> slot) & 1 ? -1.0 : 1.0;
                    y[i * rows_per_block + bucket[slot]] += sign * w[x] * scale;
                }
            }
            double y_norm_sq = 0.0;
            for (double v : y) y_norm_sq += v * v;
            const double z = y_norm_sq / w_norm_sq - 1.0;
            out.second_moment += z * z;
            if (std::abs(z) >= epsilon) out.failure_probability += 1.0;
            ++out.outcomes;
        }
    }
    out.failure_probability /= static_cast<double>(out.outcomes);
    out.second_moment /= static_cast<double>(out.outcomes);
    return out;
}

} // namespace testsupport
