#pragma once

#include "hfc/registry.hpp"

#include <string>
#include <vector>

inline const std::vector<hfc::pres::RegistryEntry>& registry() {
    static const std::vector<hfc::pres::RegistryEntry> entries =
        hfc::pres::load_registry(std::string(HFC_REPO_ROOT) + "/data/registry.txt");
    return entries;
}

inline hfc::tess::Tessellation code(const std::string& name) {
    return hfc::pres::build_code(hfc::pres::find_entry(registry(), name));
}
