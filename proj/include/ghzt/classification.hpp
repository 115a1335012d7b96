#pragma once

#include <string_view>

#include "ghzt/ghz_symmetric.hpp"
#include "ghzt/measures.hpp"

namespace ghzt {

enum class EntanglementClass { Separable, Biseparable, WClass, GHZClass };

inline std::string_view to_string(EntanglementClass c) {
    switch (c) {
        case EntanglementClass::Separable: return "separable";
        case EntanglementClass::Biseparable: return "biseparable";
        case EntanglementClass::WClass: return "w";
        case EntanglementClass::GHZClass: return "ghz";
    }
    return "unknown";
}

// SLOCC class of a GHZ-symmetric state. A measure within
// tol.class_boundary of zero counts as zero, so boundary points fall into
// the lower class.
inline EntanglementClass classify(const GhzCoords& c, const Tolerances& tol = {}) {
    require_physical(c, "classify", tol);
    if (three_tangle(c, tol) > tol.class_boundary) return EntanglementClass::GHZClass;
    if (gme_concurrence(c, tol) > tol.class_boundary) return EntanglementClass::WClass;
    if (negativity_closed_form(c, tol) > tol.class_boundary) return EntanglementClass::Biseparable;
    return EntanglementClass::Separable;
}

}  // namespace ghzt
