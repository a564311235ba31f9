#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "iftt_pin/engine.hpp"
#include "iftt_pin/policies.hpp"

namespace iftt {

struct SessionConfig {
    Mode mode = Mode::SelfCal;
    int n_buttons = 9;
    int pin_length = 4;
    PolicyKind policy = PolicyKind::RandomBalanced;
    std::uint64_t seed = 0;
    bool carryover = true;
    int click_cap = 200;

    // Throws InvalidConfig.
    void validate() const;

    friend bool operator==(const SessionConfig&, const SessionConfig&) = default;
};

enum class SessionStatus { InProgress, AllInconsistent, Capped, Complete };

std::string_view to_string(SessionStatus s);  // "in_progress", "all_inconsistent", "capped", "complete"

/// Clicks of one phase (one attempt at one digit) and the digit it committed.
struct PhaseRecord {
    std::vector<ClickEvent> clicks;
    std::optional<Digit> committed;

    friend bool operator==(const PhaseRecord&, const PhaseRecord&) = default;
};

/// Multi-digit entry state machine. Values are immutable from the outside;
/// session_click and session_reset return the successor state.
class PinSession {
public:
    const SessionConfig& config() const { return config_; }
    const std::vector<Digit>& committed_digits() const { return committed_; }
    const BeliefState& current_belief() const { return belief_; }
    const Coloring& current_coloring() const { return coloring_; }
    const ButtonMapping& learned_mapping() const { return learned_; }
    const std::vector<PhaseRecord>& phases() const { return phases_; }
    const std::vector<ClickEvent>& phase_clicks() const { return phases_.back().clicks; }
    SessionStatus status() const { return status_; }

private:
    PinSession(SessionConfig config, BeliefState belief, Coloring coloring, ButtonMapping learned)
        : config_(config), belief_(std::move(belief)), coloring_(coloring), learned_(std::move(learned))
    {
    }

    friend PinSession start_session(const SessionConfig& config);
    friend PinSession session_click(const PinSession& session, ButtonId button);
    friend PinSession session_reset(const PinSession& session);

    void open_phase();

    SessionConfig config_;
    std::vector<Digit> committed_;
    BeliefState belief_;
    Coloring coloring_;
    ButtonMapping learned_;
    std::vector<PhaseRecord> phases_;
    SessionStatus status_ = SessionStatus::InProgress;
};

PinSession start_session(const SessionConfig& config);

/// One button press against the coloring currently on screen. Throws
/// InvalidState unless the session is InProgress, OutOfRange for a bad button.
PinSession session_click(const PinSession& session, ButtonId button);

/// Abandons the current phase and opens a fresh one for the same digit.
/// Allowed in any non-Complete state.
PinSession session_reset(const PinSession& session);

/// Coloring shown at the given click of the given phase; a pure function of
/// (seed, phase, click) and the belief it splits under Bisect.
Coloring draw_coloring(const SessionConfig& config, int phase_index, int click_index, const BeliefState& belief);

struct DashboardRow {
    Digit digit{0};
    bool consistent = true;
    std::vector<EvidenceSet> dots;  // one per button

    friend bool operator==(const DashboardRow&, const DashboardRow&) = default;
};

struct ViewState {
    int committed = 0;
    int pin_length = 0;
    Coloring digit_colors = Coloring::from_yellow(DigitSet::of({0}));
    std::vector<std::optional<Color>> buttons;  // nullopt renders neutral
    std::vector<DashboardRow> dashboard;
    SessionStatus status = SessionStatus::InProgress;
    int phase_clicks = 0;

    friend bool operator==(const ViewState&, const ViewState&) = default;
};

/// Classic buttons always show their color. Self-calibrating buttons stay
/// neutral until the whole PIN is complete.
ViewState current_view(const PinSession& session);

/// Dashboard rows for a belief.
std::vector<DashboardRow> dashboard_rows(const BeliefState& belief);

}  // namespace iftt
