#pragma once

#include <vector>

#include "pomdp/model.hpp"

namespace pomdp::fixtures {

/// Two-door tiger problem with 0.85 listening accuracy and discount 0.95.
/// States {left, right} name the tiger's door; opening the tiger door costs
/// 100, the other door pays 10, listening costs 1. Opening resets the state
/// uniformly and yields an uninformative observation.
inline PomdpModel tiger85() {
    const std::vector<double> T = {
        1.0, 0.0, 0.0, 1.0,  // listen
        0.5, 0.5, 0.5, 0.5,  // open-left
        0.5, 0.5, 0.5, 0.5,  // open-right
    };
    const std::vector<double> O = {
        0.85, 0.15, 0.15, 0.85,  // listen
        0.5, 0.5, 0.5, 0.5,      // open-left
        0.5, 0.5, 0.5, 0.5,      // open-right
    };
    const std::vector<double> R = {
        -1.0, -1.0,     // listen
        -100.0, 10.0,   // open-left
        10.0, -100.0,   // open-right
    };
    return PomdpModel({"left", "right"}, {"listen", "open-left", "open-right"}, {"hear-left", "hear-right"}, T, O, R,
                      0.95, {0.5, 0.5});
}

} // namespace pomdp::fixtures
