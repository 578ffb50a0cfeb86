#pragma once

#include "nbcqi/growth.hpp"

namespace nbcqi {

struct AssumptionReport {
    bool homomorphism = false;
    bool injective = false;
    bool nonsurjective = false;  // |det| an integer > 1
    bool unipotent_free = false;
    bool carnot = false;
    std::string det_abs;  // |det| as a rational string
    std::string notes;

    bool all_ok() const {
        return homomorphism && injective && nonsurjective && unipotent_free && carnot;
    }
};

AssumptionReport check_standing_assumptions(const Endomorphism& e);

struct EvidenceItem {
    std::string check;
    std::string result;
    std::string data;
};

struct Verdict {
    enum class Outcome { QuasiIsometric, NotQuasiIsometric, Unknown } outcome;
    unsigned r1 = 0, r2 = 0;  // witness powers for QuasiIsometric
    std::string witness;      // failing invariant for NotQuasiIsometric
    std::vector<EvidenceItem> evidence;
};

/// Decision pipeline: equal PAJF up to powers proves quasi-isometry;
/// a mismatch of the divergence multisets (up to one power) or of the
/// growth-filtration fingerprints proves non-quasi-isometry; otherwise the
/// comparison is Unknown. Throws AssumptionViolationError when the standing
/// assumptions fail or the algebras differ as canonical structure-constant
/// tables.
Verdict classify(const Endomorphism& e1, const Endomorphism& e2,
                 unsigned power_bound = kDefaultPowerBound);

}  // namespace nbcqi
