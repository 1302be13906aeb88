#pragma once

#include "hfc/presentation.hpp"
#include "hfc/tessellation.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hfc::pres {

/// One named code: either an explicit permutation representation or a set of
/// extra relators, plus the expected tessellation parameters for validation.
struct RegistryEntry {
    std::string name;
    int p = 0;
    int V = 0, E = 0, F = 0, g = 0;
    bool has_rep = false;
    PermutationRep rep;            // when has_rep
    std::vector<Word> relators;    // otherwise
};

/// Realize the entry as a permutation representation (coset enumeration for
/// relator payloads; pass-through for explicit ones).
PermutationRep realize(const RegistryEntry& entry, int max_cosets = 1000000);

/// Parse and validate a registry file. Every entry is realized, validated,
/// extracted and colored; its (V, E, F, g) must match the header.
std::vector<RegistryEntry> load_registry(const std::string& path);
std::vector<RegistryEntry> load_registry(std::istream& is, const std::string& source);

/// Colored tessellation for an accepted entry; base_name is set to the entry
/// name and level to 1.
tess::Tessellation build_code(const RegistryEntry& entry);

/// Locate an entry by name; throws CONFIG if absent.
const RegistryEntry& find_entry(const std::vector<RegistryEntry>& entries, const std::string& name);

void write_registry(std::ostream& os, const std::vector<RegistryEntry>& entries);

} // namespace hfc::pres
