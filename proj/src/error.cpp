#include "hfc/error.hpp"

namespace hfc {

const char* errc_name(errc c) {
    switch (c) {
        case errc::enumeration_overflow: return "ENUMERATION_OVERFLOW";
        case errc::invalid_presentation: return "INVALID_PRESENTATION";
        case errc::parse_error: return "PARSE_ERROR";
        case errc::validation_mismatch: return "VALIDATION_MISMATCH";
        case errc::malformed_orbits: return "MALFORMED_ORBITS";
        case errc::non_orientable_or_inconsistent: return "NON_ORIENTABLE_OR_INCONSISTENT";
        case errc::not_three_colorable: return "NOT_THREE_COLORABLE";
        case errc::adjacent_same_color: return "ADJACENT_SAME_COLOR";
        case errc::seam_mismatch: return "SEAM_MISMATCH";
        case errc::trivial_homology: return "TRIVIAL_HOMOLOGY";
        case errc::rank_deficit: return "RANK_DEFICIT";
        case errc::not_a_cycle: return "NOT_A_CYCLE";
        case errc::convergence_failure: return "CONVERGENCE_FAILURE";
        case errc::disconnected: return "DISCONNECTED";
        case errc::observable_nondeterministic: return "OBSERVABLE_NONDETERMINISTIC";
        case errc::nondeterministic_detector: return "NONDETERMINISTIC_DETECTOR";
        case errc::not_graphlike: return "NOT_GRAPHLIKE";
        case errc::unmatchable: return "UNMATCHABLE";
        case errc::domain: return "DOMAIN";
        case errc::io: return "IO";
        case errc::config: return "CONFIG";
    }
    return "UNKNOWN";
}

} // namespace hfc
