#include "sjlt/params.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "sjlt/error.hpp"

namespace sjlt {

int SjltParams::bucket_bits() const {
    return std::countr_zero(rows_per_block());
}

void SjltParams::validate() const {
    if (u < 1) throw ConfigError("params: input dimension u must be >= 1");
    if (s < 1) throw ConfigError("params: s must be >= 1");
    if (m < 1 || m % s != 0)
        throw ConfigError("params: s must divide m (m=" + std::to_string(m) +
                          ", s=" + std::to_string(s) + ")");
    if (!std::has_single_bit(rows_per_block()))
        throw ConfigError("params: m/s must be a power of two, got " +
                          std::to_string(rows_per_block()));
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw ConfigError("params: epsilon must be in (0,1)");
    if (!(delta > 0.0) || !(delta < 1.0))
        throw ConfigError("params: delta must be in (0,1)");
}

SjltParams suggest_params(double epsilon, double delta, FamilyKind kind,
                          const Alphabet& alphabet, double cm, double cs) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw ConfigError("params: epsilon must be in (0,1)");
    if (!(delta > 0.0) || !(delta < 1.0))
        throw ConfigError("params: delta must be in (0,1)");
    if (!(cm > 0.0) || !(cs > 0.0))
        throw ConfigError("params: constants cm, cs must be positive");
    alphabet.validate();

    const double log_inv_delta = std::log(1.0 / delta);
    const double raw_m = cm * std::pow(epsilon, -2.0) * log_inv_delta;
    const double raw_s = cs * (1.0 / epsilon) * log_inv_delta;

    std::uint32_t s = 1;
    if (raw_s > 1.0)
        s = static_cast<std::uint32_t>(std::ceil(raw_s));
    if ((kind == FamilyKind::mixed || kind == FamilyKind::simple) &&
        s > alphabet.sigma())
        throw ConfigError(
            "params: required sparsity s=" + std::to_string(s) +
            " exceeds alphabet size " + std::to_string(alphabet.sigma()) +
            "; use a larger alphabet (more char_bits)");

    std::uint64_t m = s; // k = 0 floor
    while (static_cast<double>(m) < raw_m) m *= 2;

    SjltParams p;
    p.u = alphabet.universe();
    p.m = m;
    p.s = s;
    p.epsilon = epsilon;
    p.delta = delta;
    p.validate();
    return p;
}

} // namespace sjlt
