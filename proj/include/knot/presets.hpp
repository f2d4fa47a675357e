#ifndef KNOT_PRESETS_HPP
#define KNOT_PRESETS_HPP

#include <string>
#include <vector>

#include "knot/braid.hpp"
#include "knot/laurent.hpp"
#include "knot/presentation.hpp"

namespace knot {

/// Bundled fixture knots.  Each carries a braid word whose closure is
/// the knot and the expected normalized Alexander polynomial; the
/// 2-generator presentations (where present) are Tietze reductions of
/// the braid-closure presentations, used by the continuation machinery.
struct KnotPreset {
    std::string name;
    int strands;
    std::vector<int> braid;
    std::string two_generator_relator; // empty when not available
    IntLaurent delta;
};

inline const std::vector<KnotPreset>& knot_presets() {
    static const std::vector<KnotPreset> presets = {
        {"trefoil", 2, {1, 1, 1}, "", IntLaurent(-1, {1, -1, 1})},
        {"figure-eight", 3, {1, -2, 1, -2}, "X2*x1*x2*X1*x2*x1*X2*X1*x2*X1",
         IntLaurent(-1, {-1, 3, -1})},
        {"5_2", 3, {1, 1, 1, 2, -1, 2}, "", IntLaurent(-1, {2, -3, 2})},
    };
    return presets;
}

inline const KnotPreset& find_preset(const std::string& name) {
    for (const KnotPreset& p : knot_presets())
        if (p.name == name) return p;
    throw error("unknown preset '" + name + "'; available: trefoil, figure-eight, 5_2");
}

/// Braid-closure presentation of the preset knot.
inline Presentation preset_presentation(const KnotPreset& preset) {
    return braid_to_presentation(preset.braid, preset.strands);
}

/// A 2-generator meridional presentation of the preset knot, required
/// by the Riley continuation.  The trefoil braid closure is already
/// 2-generator; other knots carry an explicit reduced relator.
inline Presentation preset_two_generator(const KnotPreset& preset) {
    if (!preset.two_generator_relator.empty())
        return make_presentation(2, {parse_word(preset.two_generator_relator)});
    Presentation p = preset_presentation(preset);
    if (p.generator_count != 2)
        throw error("preset '" + preset.name + "' has no 2-generator presentation");
    return p;
}

} // namespace knot

#endif
