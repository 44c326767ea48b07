#include "sjlt/family.hpp"

#include <mutex>

namespace sjlt {

std::string family_kind_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::simple: return "simple";
        case FamilyKind::mixed: return "mixed";
        case FamilyKind::poly: return "poly";
        case FamilyKind::oracle: return "oracle";
    }
    throw ConfigError("unknown family kind");
}

FamilyKind parse_family_kind(const std::string& name) {
    if (name == "simple") return FamilyKind::simple;
    if (name == "mixed") return FamilyKind::mixed;
    if (name == "poly") return FamilyKind::poly;
    if (name == "oracle") return FamilyKind::oracle;
    throw ConfigError("unknown family '" + name +
                      "' (expected simple|mixed|poly|oracle)");
}

HashFamily build_family(const FamilyConfig& config) {
    const Alphabet& a = config.alphabet;
    switch (config.kind) {
        case FamilyKind::simple:
            return HashFamily(SimpleTabulationFamily::build(
                a, config.bucket_bits, config.blocks, config.seed));
        case FamilyKind::mixed: {
            auto family = MixedTabulationFamily::build(a, config.bucket_bits,
                                                       config.blocks, config.seed);
            if (family.blocks_exceed_sqrt_alphabet()) {
                // Once per process; Monte Carlo loops rebuild families per trial.
                static std::once_flag warned;
                std::call_once(warned, [&] {
                    std::cerr << "sjlt: warning: " << config.blocks
                              << " blocks exceed sqrt(|Sigma|) for |Sigma| = "
                              << a.sigma()
                              << "; guarantees are only known up to that point\n";
                });
            }
            return HashFamily(std::move(family));
        }
        case FamilyKind::poly:
            return HashFamily(PolynomialFamily::build(a.universe(), config.blocks,
                                                      config.bucket_bits, config.kwise,
                                                      config.seed));
        case FamilyKind::oracle:
            return HashFamily(RandomOracleFamily::build(a.universe(), config.blocks,
                                                        config.bucket_bits, config.seed,
                                                        config.oracle_entry_cap));
    }
    throw ConfigError("unknown family kind");
}

} // namespace sjlt
