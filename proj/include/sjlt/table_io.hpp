#pragma once
// Versioned table dumps. Binary layout, all little-endian:
//   magic "SJLT" | version u32 | family u8 | char_bits u8 | c u8 | d u8 |
//   r u8 | s u32 | seed u64 | table words (u64 each)
// Word order per family:
//   simple family: per block, hash tables (c*|Sigma|) then sign tables;
//   mixed family:  h1, h2, h3, sigma1, sigma3 tables in that order;
//   poly:          the q coefficients (q = word count);
//   oracle:        s*u packed (bucket, sign) words, key-major.
// An equivalent JSON form exists for debugging; both round-trip exactly.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "sjlt/family.hpp"

#include <json.hpp>

namespace sjlt {

constexpr std::uint32_t kTableDumpVersion = 1;

void save_family(const HashFamily& family, const FamilyConfig& config,
                 std::ostream& out);
void save_family_file(const HashFamily& family, const FamilyConfig& config,
                      const std::string& path);

// Returns the family plus the config reconstructed from the header.
std::pair<HashFamily, FamilyConfig> load_family(std::istream& in);
std::pair<HashFamily, FamilyConfig> load_family_file(const std::string& path);

nlohmann::json family_debug_json(const HashFamily& family, const FamilyConfig& config);
std::pair<HashFamily, FamilyConfig> family_from_debug_json(const nlohmann::json& doc);

} // namespace sjlt
