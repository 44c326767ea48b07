#include "sjlt/table_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "sjlt/error.hpp"

namespace sjlt {
namespace {

constexpr char kMagic[4] = {'S', 'J', 'L', 'T'};

void put_u8(std::ostream& out, std::uint8_t v) {
    out.put(static_cast<char>(v));
}

void put_u32(std::ostream& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::ostream& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint8_t get_u8(std::istream& in) {
    const int c = in.get();
    if (c == EOF) throw IoError("table dump: truncated header");
    return static_cast<std::uint8_t>(c);
}

std::uint32_t get_u32(std::istream& in) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(get_u8(in)) << (8 * i);
    return v;
}

std::uint64_t get_u64(std::istream& in) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(get_u8(in)) << (8 * i);
    return v;
}

struct DumpHeader {
    std::uint8_t family = 0;
    std::uint8_t char_bits = 0;
    std::uint8_t c = 0;
    std::uint8_t d = 0;
    std::uint8_t r = 0;
    std::uint32_t s = 0;
    std::uint64_t seed = 0;
};

void write_header(std::ostream& out, const DumpHeader& h) {
    out.write(kMagic, 4);
    put_u32(out, kTableDumpVersion);
    put_u8(out, h.family);
    put_u8(out, h.char_bits);
    put_u8(out, h.c);
    put_u8(out, h.d);
    put_u8(out, h.r);
    put_u32(out, h.s);
    put_u64(out, h.seed);
}

DumpHeader read_header(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0)
        throw DataError("table dump: bad magic");
    const std::uint32_t version = get_u32(in);
    if (version != kTableDumpVersion)
        throw DataError("table dump: unsupported version " + std::to_string(version));
    DumpHeader h;
    h.family = get_u8(in);
    h.char_bits = get_u8(in);
    h.c = get_u8(in);
    h.d = get_u8(in);
    h.r = get_u8(in);
    h.s = get_u32(in);
    h.seed = get_u64(in);
    return h;
}

std::vector<std::uint64_t> collect_words(const HashFamily& family) {
    std::vector<std::uint64_t> words;
    auto append = [&](std::span<const std::uint64_t> span) {
        words.insert(words.end(), span.begin(), span.end());
    };
    family.visit([&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, SimpleTabulationFamily>) {
            for (std::uint32_t b = 0; b < f.blocks(); ++b) {
                append(f.block_hash(b).table_words());
                append(f.block_sign(b).bits().table_words());
            }
        } else if constexpr (std::is_same_v<F, MixedTabulationFamily>) {
            const MixedTabulation& base = f.base();
            append(base.h1().table_words());
            append(base.h2().table_words());
            append(base.h3().table_words());
            append(base.sigma1().bits().table_words());
            append(base.sigma3().bits().table_words());
        } else if constexpr (std::is_same_v<F, PolynomialFamily>) {
            append(f.polynomial().coefficients());
        } else {
            append(f.words());
        }
    });
    return words;
}

HashFamily rebuild_family(const FamilyConfig& config,
                          std::vector<std::uint64_t> words) {
    const Alphabet& a = config.alphabet;
    const std::size_t sigma = a.sigma();
    const std::size_t key_words = static_cast<std::size_t>(a.c) * sigma;
    std::size_t cursor = 0;
    auto take = [&](std::size_t count) {
        if (cursor + count > words.size())
            throw DataError("table dump: truncated table data");
        std::vector<std::uint64_t> out(words.begin() + static_cast<std::ptrdiff_t>(cursor),
                                       words.begin() +
                                           static_cast<std::ptrdiff_t>(cursor + count));
        cursor += count;
        return out;
    };
    auto done = [&] {
        if (cursor != words.size())
            throw DataError("table dump: trailing table data");
    };

    switch (config.kind) {
        case FamilyKind::simple: {
            std::vector<SimpleTabulation> hashes;
            std::vector<SignTable> signs;
            for (std::uint32_t b = 0; b < config.blocks; ++b) {
                hashes.push_back(SimpleTabulation::from_tables(
                    a, config.bucket_bits, take(key_words), config.seed));
                signs.push_back(
                    SignTable::from_tables(a, take(key_words), config.seed));
            }
            done();
            return HashFamily(SimpleTabulationFamily::from_parts(
                std::move(hashes), std::move(signs)));
        }
        case FamilyKind::mixed: {
            Alphabet derived{a.char_bits, a.derived_d, 0};
            const std::size_t derived_words =
                static_cast<std::size_t>(a.derived_d) * sigma;
            auto h1 = SimpleTabulation::from_tables(a, config.bucket_bits,
                                                    take(key_words), config.seed);
            auto h2 = SimpleTabulation::from_tables(
                a, a.derived_d * a.char_bits, take(key_words), config.seed);
            auto h3 = SimpleTabulation::from_tables(derived, config.bucket_bits,
                                                    take(derived_words), config.seed);
            auto sigma1 = SignTable::from_tables(a, take(key_words), config.seed);
            auto sigma3 = SignTable::from_tables(derived, take(derived_words),
                                                 config.seed);
            done();
            return HashFamily(MixedTabulationFamily::from_base(
                MixedTabulation::from_components(std::move(h1), std::move(h2),
                                                 std::move(h3), std::move(sigma1),
                                                 std::move(sigma3), config.seed),
                config.blocks));
        }
        case FamilyKind::poly: {
            auto coeffs = take(words.size());
            done();
            return HashFamily(PolynomialFamily::from_polynomial(
                PolynomialHash::from_coefficients(std::move(coeffs), kMersenne61,
                                                  config.seed),
                a.universe(), config.blocks, config.bucket_bits));
        }
        case FamilyKind::oracle: {
            auto table = take(words.size());
            done();
            return HashFamily(RandomOracleFamily::from_words(
                a.universe(), config.blocks, config.bucket_bits, std::move(table),
                config.seed));
        }
    }
    throw DataError("table dump: unknown family tag");
}

DumpHeader header_from_config(const FamilyConfig& config) {
    DumpHeader h;
    h.family = static_cast<std::uint8_t>(config.kind);
    h.char_bits = static_cast<std::uint8_t>(config.alphabet.char_bits);
    h.c = static_cast<std::uint8_t>(config.alphabet.c);
    h.d = static_cast<std::uint8_t>(config.alphabet.derived_d);
    h.r = static_cast<std::uint8_t>(config.bucket_bits);
    h.s = config.kind == FamilyKind::poly ? config.kwise : config.blocks;
    h.seed = config.seed;
    return h;
}

FamilyConfig config_from_header(const DumpHeader& h, std::uint32_t poly_blocks) {
    FamilyConfig config;
    if (h.family > 3) throw DataError("table dump: unknown family tag");
    config.kind = static_cast<FamilyKind>(h.family);
    config.alphabet = Alphabet{h.char_bits, h.c, h.d};
    config.bucket_bits = h.r;
    config.seed = h.seed;
    if (config.kind == FamilyKind::poly) {
        config.kwise = h.s;
        config.blocks = poly_blocks;
    } else {
        config.blocks = h.s;
        config.kwise = 2;
    }
    return config;
}

} // namespace

void save_family(const HashFamily& family, const FamilyConfig& config,
                 std::ostream& out) {
    write_header(out, header_from_config(config));
    for (std::uint64_t word : collect_words(family)) put_u64(out, word);
    if (!out) throw IoError("table dump: write failed");
}

void save_family_file(const HashFamily& family, const FamilyConfig& config,
                      const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("table dump: cannot open " + path + " for writing");
    save_family(family, config, out);
}

std::pair<HashFamily, FamilyConfig> load_family(std::istream& in) {
    const DumpHeader header = read_header(in);
    std::vector<std::uint64_t> words;
    while (true) {
        char buf[8];
        in.read(buf, 8);
        if (in.gcount() == 0) break;
        if (in.gcount() != 8) throw DataError("table dump: truncated word");
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(buf[i]))
                 << (8 * i);
        words.push_back(v);
    }
    // A polynomial dump does not carry the block count (it is a sketching
    // parameter, not table content); callers supply it when sketching.
    FamilyConfig config = config_from_header(header, /*poly_blocks=*/1);
    return {rebuild_family(config, std::move(words)), config};
}

std::pair<HashFamily, FamilyConfig> load_family_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("table dump: cannot open " + path);
    return load_family(in);
}

nlohmann::json family_debug_json(const HashFamily& family,
                                 const FamilyConfig& config) {
    const DumpHeader h = header_from_config(config);
    return nlohmann::json{{"magic", "SJLT"},
                          {"version", kTableDumpVersion},
                          {"family", family_kind_name(config.kind)},
                          {"char_bits", h.char_bits},
                          {"c", h.c},
                          {"d", h.d},
                          {"r", h.r},
                          {"s", h.s},
                          {"seed", h.seed},
                          {"words", collect_words(family)}};
}

std::pair<HashFamily, FamilyConfig> family_from_debug_json(const nlohmann::json& doc) {
    if (doc.value("magic", "") != "SJLT" ||
        doc.value("version", 0u) != kTableDumpVersion)
        throw DataError("table dump json: bad magic or version");
    DumpHeader h;
    h.family = static_cast<std::uint8_t>(
        parse_family_kind(doc.at("family").get<std::string>()));
    h.char_bits = doc.at("char_bits").get<std::uint8_t>();
    h.c = doc.at("c").get<std::uint8_t>();
    h.d = doc.at("d").get<std::uint8_t>();
    h.r = doc.at("r").get<std::uint8_t>();
    h.s = doc.at("s").get<std::uint32_t>();
    h.seed = doc.at("seed").get<std::uint64_t>();
    auto words = doc.at("words").get<std::vector<std::uint64_t>>();
    FamilyConfig config = config_from_header(h, /*poly_blocks=*/1);
    return {rebuild_family(config, std::move(words)), config};
}

} // namespace sjlt
