#pragma once

#include <string_view>

#include "iftt_pin/engine.hpp"
#include "iftt_pin/rng.hpp"
#include "iftt_pin/types.hpp"

namespace iftt {

enum class PolicyKind { RandomBalanced, Bisect };

std::string_view to_string(PolicyKind p);       // "random_balanced" | "bisect"
PolicyKind policy_from_string(std::string_view text);

// Five Yellow, five Grey; uniform over the 252 balanced splits.
Coloring random_balanced_coloring(Rng& rng);

// Splits the candidates floor/ceil between the colors (which color gets the
// larger half is random) and pads with the other digits to keep 5/5.
// Throws NothingToSplit for fewer than two candidates.
Coloring bisect_coloring(DigitSet candidates, Rng& rng);

Coloring next_coloring(PolicyKind policy, DigitSet candidates, Rng& rng);

// Bisecting only pays off once the key colors are known. Before that two
// surviving digits with mirrored colors would be split 1/1 forever, each
// press fitting both, so Bisect falls back to a random balanced coloring.
Coloring next_coloring(PolicyKind policy, const BeliefState& belief, Rng& rng);

}  // namespace iftt
