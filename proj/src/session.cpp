#include "iftt_pin/session.hpp"

#include <string>

namespace iftt {

void SessionConfig::validate() const
{
    if (mode == Mode::Classic && n_buttons != 2)
        throw Error(ErrorCode::InvalidConfig, "classic mode uses exactly 2 buttons, got " + std::to_string(n_buttons));
    if (n_buttons < 2 || n_buttons > kMaxButtons)
        throw Error(ErrorCode::InvalidConfig, "n_buttons must be in 2.." + std::to_string(kMaxButtons) + ", got " +
                                                  std::to_string(n_buttons));
    if (pin_length < 1)
        throw Error(ErrorCode::InvalidConfig, "pin_length must be at least 1, got " + std::to_string(pin_length));
    if (click_cap < 1)
        throw Error(ErrorCode::InvalidConfig, "click_cap must be at least 1, got " + std::to_string(click_cap));
}

std::string_view to_string(SessionStatus s)
{
    switch (s) {
    case SessionStatus::InProgress: return "in_progress";
    case SessionStatus::AllInconsistent: return "all_inconsistent";
    case SessionStatus::Capped: return "capped";
    case SessionStatus::Complete: return "complete";
    }
    return "unknown";
}

Coloring draw_coloring(const SessionConfig& config, int phase_index, int click_index, const BeliefState& belief)
{
    auto rng = Rng::derive(config.seed, {static_cast<std::uint64_t>(phase_index), static_cast<std::uint64_t>(click_index)});
    return next_coloring(config.policy, belief, rng);
}

void PinSession::open_phase()
{
    belief_ = new_belief(config_.n_buttons);
    if (config_.mode == Mode::Classic)
        belief_ = seed_evidence(belief_, classic_mapping());
    else if (config_.carryover)
        belief_ = seed_evidence(belief_, learned_);
    phases_.emplace_back();
    coloring_ = draw_coloring(config_, static_cast<int>(phases_.size()) - 1, 0, belief_);
    status_ = SessionStatus::InProgress;
}

PinSession start_session(const SessionConfig& config)
{
    config.validate();
    ButtonMapping learned = config.mode == Mode::Classic ? classic_mapping() : ButtonMapping(config.n_buttons);
    PinSession s(config, new_belief(config.n_buttons), Coloring::from_yellow(DigitSet::of({0})), learned);
    s.open_phase();
    return s;
}

PinSession session_click(const PinSession& session, ButtonId button)
{
    if (session.status_ != SessionStatus::InProgress)
        throw Error(ErrorCode::InvalidState,
                    "session is " + std::string(to_string(session.status_)) + ", clicks are not accepted");
    if (button.index < 0 || button.index >= session.config_.n_buttons)
        throw Error(ErrorCode::OutOfRange, "button " + std::to_string(button.index) + " outside 0.." +
                                               std::to_string(session.config_.n_buttons - 1));

    PinSession next = session;
    ClickEvent event{session.coloring_, button};
    next.belief_ = apply_click(session.belief_, event);
    auto& phase = next.phases_.back();
    phase.clicks.push_back(event);

    if (auto digit = inferred_digit(next.belief_)) {
        phase.committed = *digit;
        next.committed_.push_back(*digit);
        // First assignment wins; only an unseeded phase of an inconsistent
        // user can disagree with an earlier one.
        auto implied = implied_mapping(next.belief_, *digit);
        for (int b = 0; b < next.config_.n_buttons; ++b)
            if (!next.learned_.get(ButtonId{b}))
                if (auto c = implied.get(ButtonId{b})) next.learned_.set(ButtonId{b}, *c);
        if (static_cast<int>(next.committed_.size()) == next.config_.pin_length)
            next.status_ = SessionStatus::Complete;
        else
            next.open_phase();
    } else if (all_inconsistent(next.belief_)) {
        next.status_ = SessionStatus::AllInconsistent;
    } else if (static_cast<int>(phase.clicks.size()) >= next.config_.click_cap) {
        next.status_ = SessionStatus::Capped;
    } else {
        next.coloring_ = draw_coloring(next.config_, static_cast<int>(next.phases_.size()) - 1,
                                       static_cast<int>(phase.clicks.size()), next.belief_);
    }
    return next;
}

PinSession session_reset(const PinSession& session)
{
    if (session.status_ == SessionStatus::Complete)
        throw Error(ErrorCode::InvalidState, "session is complete");
    PinSession next = session;
    next.open_phase();
    return next;
}

std::vector<DashboardRow> dashboard_rows(const BeliefState& belief)
{
    std::vector<DashboardRow> rows;
    rows.reserve(kDigitCount);
    for (const auto& h : belief.hypotheses()) {
        DashboardRow row{h.digit, h.consistent, {}};
        for (int b = 0; b < belief.n_buttons(); ++b) row.dots.push_back(h.evidence.at(ButtonId{b}));
        rows.push_back(std::move(row));
    }
    return rows;
}

ViewState current_view(const PinSession& session)
{
    const auto& cfg = session.config();
    ViewState v;
    v.committed = static_cast<int>(session.committed_digits().size());
    v.pin_length = cfg.pin_length;
    v.digit_colors = session.current_coloring();
    v.status = session.status();
    v.phase_clicks = static_cast<int>(session.phase_clicks().size());
    v.dashboard = dashboard_rows(session.current_belief());

    const bool reveal = cfg.mode == Mode::Classic || session.status() == SessionStatus::Complete;
    for (int b = 0; b < cfg.n_buttons; ++b)
        v.buttons.push_back(reveal ? session.learned_mapping().get(ButtonId{b}) : std::nullopt);
    return v;
}

}  // namespace iftt
