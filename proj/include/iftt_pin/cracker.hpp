#pragma once

// Onlooker-side analysis of a transcript: which PINs, under which button
// conventions, could have produced the observed presses.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "iftt_pin/engine.hpp"
#include "iftt_pin/transcript.hpp"

namespace iftt {

inline constexpr std::size_t kMaxPinCandidates = 10000;

struct PhaseCandidate {
    Digit digit;
    ButtonMapping mapping;  // implied partial mapping

    friend bool operator==(const PhaseCandidate&, const PhaseCandidate&) = default;
};

/// Every digit that stays consistent over the clicks, with its implied
/// mapping. `known` seeds known button colors first (classic mode).
std::vector<PhaseCandidate> crack_phase(const std::vector<ClickEvent>& clicks, int n_buttons,
                                        const std::optional<ButtonMapping>& known = std::nullopt);

struct PhaseReport {
    std::size_t index = 0;
    // Abandoned attempts (a later phase exists but nothing was committed)
    // are not PIN positions.
    bool abandoned = false;
    std::vector<PhaseCandidate> candidates;
};

struct CrackReport {
    std::vector<PhaseReport> phases;
    std::vector<std::string> pin_candidates;  // sorted; empty when truncated
    std::size_t candidate_count = 0;          // exact unless truncated
    bool truncated = false;                   // more than kMaxPinCandidates
    // Per button: the color every surviving candidate agrees on, if any.
    ButtonMapping mapping_constraints{2};
    bool unique = false;
};

/// Per-phase analysis followed by a search for PIN tuples whose implied
/// mappings agree on one convention for the whole entry.
CrackReport crack_transcript(const Transcript& t);

std::string report_to_json(const CrackReport& report);

}  // namespace iftt
