#pragma once

#include <stdexcept>
#include <string>

namespace hfc {

enum class errc {
    enumeration_overflow,
    invalid_presentation,
    parse_error,
    validation_mismatch,
    malformed_orbits,
    non_orientable_or_inconsistent,
    not_three_colorable,
    adjacent_same_color,
    seam_mismatch,
    trivial_homology,
    rank_deficit,
    not_a_cycle,
    convergence_failure,
    disconnected,
    observable_nondeterministic,
    nondeterministic_detector,
    not_graphlike,
    unmatchable,
    domain,
    io,
    config,
};

const char* errc_name(errc c);

/// All library failures throw this; `code()` carries the machine-readable kind.
class error : public std::runtime_error {
  public:
    error(errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

} // namespace hfc
