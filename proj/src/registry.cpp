#include "hfc/registry.hpp"

#include "hfc/error.hpp"

#include <fstream>
#include <sstream>

namespace hfc::pres {

namespace {

[[noreturn]] void parse_fail(const std::string& source, int line, const std::string& msg) {
    throw error(errc::parse_error, source + ":" + std::to_string(line) + ": " + msg);
}

int parse_kv(const std::string& tok, const std::string& key, const std::string& source, int line) {
    if (tok.rfind(key + "=", 0) != 0) parse_fail(source, line, "expected " + key + "=<int>, got \"" + tok + "\"");
    try {
        return std::stoi(tok.substr(key.size() + 1));
    } catch (const std::exception&) {
        parse_fail(source, line, "bad integer in \"" + tok + "\"");
    }
}

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

PermutationRep realize(const RegistryEntry& entry, int max_cosets) {
    if (entry.has_rep) return entry.rep;
    return todd_coxeter(Presentation(entry.p, entry.relators), max_cosets);
}

std::vector<RegistryEntry> load_registry(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error(errc::io, "cannot open registry file " + path);
    return load_registry(f, path);
}

std::vector<RegistryEntry> load_registry(std::istream& is, const std::string& source) {
    std::vector<RegistryEntry> entries;
    std::string raw;
    int lineno = 0;
    RegistryEntry* cur = nullptr;
    int perm_lines = 0;

    auto finish = [&](RegistryEntry& e) {
        if (!e.has_rep && e.relators.empty())
            throw error(errc::parse_error, source + ": entry " + e.name + " has no payload");
        if (e.has_rep && perm_lines != 3)
            throw error(errc::parse_error, source + ": entry " + e.name + " has incomplete permutations");
        tess::Tessellation t = build_code(e); // validates against expected values
        (void)t;
    };

    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string head;
        ss >> head;
        if (head == "code") {
            if (cur) finish(*cur);
            RegistryEntry e;
            std::string tok;
            if (!(ss >> e.name)) parse_fail(source, lineno, "missing code name");
            ss >> tok;
            e.p = parse_kv(tok, "p", source, lineno);
            ss >> tok;
            e.V = parse_kv(tok, "V", source, lineno);
            ss >> tok;
            e.E = parse_kv(tok, "E", source, lineno);
            ss >> tok;
            e.F = parse_kv(tok, "F", source, lineno);
            ss >> tok;
            e.g = parse_kv(tok, "g", source, lineno);
            if (3 * e.V != 2 * e.E || e.p * e.F != 2 * e.E || e.V - e.E + e.F != 2 - 2 * e.g)
                throw error(errc::validation_mismatch,
                            "entry " + e.name + ": expected counts violate 3V = 2E = pF or Euler formula");
            entries.push_back(std::move(e));
            cur = &entries.back();
            perm_lines = 0;
        } else if (head == "relators:") {
            if (!cur) parse_fail(source, lineno, "relators outside a code entry");
            std::string rest;
            std::getline(ss, rest);
            std::stringstream words(rest);
            std::string w;
            while (std::getline(words, w, ';')) {
                w = strip(w);
                if (w.empty()) continue;
                try {
                    cur->relators.push_back(parse_word(w));
                } catch (const error& e) {
                    parse_fail(source, lineno, e.what());
                }
            }
            if (cur->relators.empty()) parse_fail(source, lineno, "empty relator list");
        } else if (head == "perm_alpha:" || head == "perm_beta:" || head == "perm_gamma:") {
            if (!cur) parse_fail(source, lineno, "permutation outside a code entry");
            std::vector<int>& dst = head == "perm_alpha:" ? cur->rep.perm_alpha
                                  : head == "perm_beta:"  ? cur->rep.perm_beta
                                                          : cur->rep.perm_gamma;
            if (!dst.empty()) parse_fail(source, lineno, "duplicate " + head.substr(0, head.size() - 1));
            int v;
            while (ss >> v) dst.push_back(v);
            if (!ss.eof()) parse_fail(source, lineno, "bad integer in permutation");
            if (dst.empty()) parse_fail(source, lineno, "empty permutation");
            cur->has_rep = true;
            cur->rep.flag_count = (int)dst.size();
            ++perm_lines;
        } else {
            parse_fail(source, lineno, "unrecognized line \"" + line + "\"");
        }
    }
    if (cur) finish(*cur);
    return entries;
}

tess::Tessellation build_code(const RegistryEntry& entry) {
    PermutationRep rep = realize(entry);
    auto report = validate_rep(rep, entry.p);
    if (!report.ok()) {
        std::string msg = "entry " + entry.name + ": ";
        for (const auto& v : report.violations) msg += v + "; ";
        if (!report.transitive) msg += "action not transitive";
        throw error(errc::validation_mismatch, msg);
    }
    tess::Tessellation t = tess::extract(rep, entry.p);
    if (t.num_vertices != entry.V || t.num_edges != entry.E || t.num_faces != entry.F || t.genus != entry.g)
        throw error(errc::validation_mismatch,
                    "entry " + entry.name + ": extracted (V,E,F,g) = (" + std::to_string(t.num_vertices) +
                        "," + std::to_string(t.num_edges) + "," + std::to_string(t.num_faces) + "," +
                        std::to_string(t.genus) + ") does not match header (" + std::to_string(entry.V) +
                        "," + std::to_string(entry.E) + "," + std::to_string(entry.F) + "," +
                        std::to_string(entry.g) + ")");
    tess::color_faces(t);
    tess::color_edges(t);
    t.base_name = entry.name;
    t.level = 1;
    return t;
}

const RegistryEntry& find_entry(const std::vector<RegistryEntry>& entries, const std::string& name) {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw error(errc::config, "no registry entry named " + name);
}

void write_registry(std::ostream& os, const std::vector<RegistryEntry>& entries) {
    for (const auto& e : entries) {
        os << "code " << e.name << " p=" << e.p << " V=" << e.V << " E=" << e.E << " F=" << e.F
           << " g=" << e.g << "\n";
        if (e.has_rep) {
            const char* names[3] = {"perm_alpha:", "perm_beta:", "perm_gamma:"};
            const std::vector<int>* perms[3] = {&e.rep.perm_alpha, &e.rep.perm_beta, &e.rep.perm_gamma};
            for (int i = 0; i < 3; ++i) {
                os << names[i];
                for (int v : *perms[i]) os << " " << v;
                os << "\n";
            }
        } else {
            os << "relators:";
            for (size_t i = 0; i < e.relators.size(); ++i)
                os << (i ? ";" : " ") << format_word(e.relators[i]);
            os << "\n";
        }
    }
}

} // namespace hfc::pres
