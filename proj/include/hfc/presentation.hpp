#pragma once

#include "hfc/words.hpp"

#include <vector>

namespace hfc::pres {

/// Quotient presentation of the rotation triangle group:
///   < a, b, g | a^2 = b^3 = g^p = abg = 1, extra relators >
struct Presentation {
    int p = 8;
    std::vector<Word> extra_relators;

    Presentation() = default;
    explicit Presentation(int p_, std::vector<Word> extras = {});

    /// Base rotation-group relators a^2, b^3, g^p, abg.
    std::vector<Word> base_relators() const;
    /// Base plus extra relators.
    std::vector<Word> all_relators() const;
};

/// Permutations of the flag set under the three generators.
struct PermutationRep {
    int flag_count = 0;
    std::vector<int> perm_alpha, perm_beta, perm_gamma;

    int apply_letter(int flag, int l) const;
    int apply_word(int flag, const Word& w) const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool transitive = false;
    bool ok() const { return transitive && violations.empty(); }
};

ValidationReport validate_rep(const PermutationRep& rep, int p);

/// HLT coset enumeration of the trivial subgroup: one coset per group element.
/// Cosets are renumbered canonically (BFS from coset 0 in letter order), so the
/// output is reproducible independent of relator order.
PermutationRep todd_coxeter(const Presentation& pres, int max_cosets = 1000000);

} // namespace hfc::pres
