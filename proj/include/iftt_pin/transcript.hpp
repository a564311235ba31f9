#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "iftt_pin/session.hpp"

namespace iftt {

inline constexpr int kTranscriptVersion = 1;

/// Machine-readable record of everything an onlooker sees: the coloring on
/// screen at each press and which button was pressed.
struct Transcript {
    int version = kTranscriptVersion;
    SessionConfig config;  // click_cap is not part of the document
    std::vector<PhaseRecord> phases;

    friend bool operator==(const Transcript&, const Transcript&) = default;
};

Transcript export_transcript(const PinSession& session);

/// Indented JSON with fields in schema order and a trailing newline.
std::string serialize_transcript(const Transcript& t);

/// Throws Error(Parse) naming the offending field, or the line and column
/// for malformed JSON.
Transcript import_transcript(std::string_view document);

/// Drives a fresh session with the transcript's buttons and checks every
/// recorded coloring and committed digit. Phases that end uncommitted
/// before the last one are followed by a reset.
PinSession replay_transcript(const Transcript& t, int click_cap = 200);

}  // namespace iftt
