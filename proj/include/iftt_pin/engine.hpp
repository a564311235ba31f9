#pragma once

// Belief-update engine. Every digit is a hypothesis; under hypothesis d a
// click on button b means "b has the color d currently shows". A hypothesis
// dies once some button has been used for both colors.

#include <array>
#include <cstdint>
#include <optional>

#include "iftt_pin/types.hpp"

namespace iftt {

/// Colors implied for one button under one hypothesis.
struct EvidenceSet {
    bool yellow = false;
    bool grey = false;

    int size() const { return int(yellow) + int(grey); }
    bool contradictory() const { return yellow && grey; }
    friend bool operator==(const EvidenceSet&, const EvidenceSet&) = default;
};

/// Per-button evidence for one hypothesis, as two button bitmasks.
struct Evidence {
    std::uint32_t yellow = 0;
    std::uint32_t grey = 0;

    EvidenceSet at(ButtonId b) const
    {
        return {((yellow >> b.index) & 1U) != 0, ((grey >> b.index) & 1U) != 0};
    }
    void add(ButtonId b, Color c)
    {
        (c == Color::Yellow ? yellow : grey) |= (1U << b.index);
    }
    bool contradictory() const { return (yellow & grey) != 0; }
    bool empty() const { return (yellow | grey) == 0; }
    friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct HypothesisState {
    Digit digit{0};
    Evidence evidence;
    bool consistent = true;

    friend bool operator==(const HypothesisState&, const HypothesisState&) = default;
};

class BeliefState {
public:
    int n_buttons() const { return n_buttons_; }
    int click_count() const { return click_count_; }
    const HypothesisState& hypothesis(Digit d) const { return hypotheses_[d.value()]; }
    const std::array<HypothesisState, kDigitCount>& hypotheses() const { return hypotheses_; }
    EvidenceSet evidence(Digit d, ButtonId b) const { return hypotheses_[d.value()].evidence.at(b); }

    friend bool operator==(const BeliefState&, const BeliefState&) = default;

private:
    BeliefState() = default;

    friend BeliefState new_belief(int n_buttons);
    friend BeliefState apply_click(const BeliefState& belief, const ClickEvent& event);
    friend BeliefState seed_evidence(const BeliefState& belief, const ButtonMapping& mapping);

    int n_buttons_ = 0;
    std::array<HypothesisState, kDigitCount> hypotheses_{};
    int click_count_ = 0;
};

/// Fresh belief: ten consistent hypotheses with no evidence.
/// Throws InvalidConfig unless 2 <= n_buttons <= kMaxButtons.
BeliefState new_belief(int n_buttons);

/// Records the click under every hypothesis, including dead ones (the
/// dashboard still shows their dots). Returns the updated copy.
BeliefState apply_click(const BeliefState& belief, const ClickEvent& event);

DigitSet consistent_set(const BeliefState& belief);

/// The digit when exactly one hypothesis survives.
std::optional<Digit> inferred_digit(const BeliefState& belief);

bool all_inconsistent(const BeliefState& belief);

/// Button colors implied by a surviving hypothesis; unclicked buttons stay
/// unassigned. Throws InconsistentHypothesis for an eliminated digit.
ButtonMapping implied_mapping(const BeliefState& belief, Digit digit);

/// True when every surviving hypothesis implies the same color for every
/// button, i.e. the key colors are known whichever digit is being entered.
bool colors_known(const BeliefState& belief);

/// Inserts known button colors into every hypothesis of a fresh belief.
BeliefState seed_evidence(const BeliefState& belief, const ButtonMapping& mapping);

/// Known-color elimination: keep the candidates shown in the announced color.
DigitSet classic_intersect(DigitSet candidates, const Coloring& coloring, Color announced);

/// Number of total button->color mappings using both colors: 2^n - 2.
std::uint64_t count_valid_mappings(int n_buttons);

}  // namespace iftt
