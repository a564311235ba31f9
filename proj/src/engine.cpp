#include "iftt_pin/engine.hpp"

#include <string>

namespace iftt {

BeliefState new_belief(int n_buttons)
{
    if (n_buttons < 2 || n_buttons > kMaxButtons)
        throw Error(ErrorCode::InvalidConfig,
                    "need between 2 and " + std::to_string(kMaxButtons) + " buttons, got " + std::to_string(n_buttons));
    BeliefState b;
    b.n_buttons_ = n_buttons;
    for (int d = 0; d < kDigitCount; ++d) b.hypotheses_[d].digit = Digit(d);
    return b;
}

BeliefState apply_click(const BeliefState& belief, const ClickEvent& event)
{
    if (event.button.index < 0 || event.button.index >= belief.n_buttons_)
        throw Error(ErrorCode::OutOfRange, "button " + std::to_string(event.button.index) + " outside 0.." +
                                               std::to_string(belief.n_buttons_ - 1));
    BeliefState next = belief;
    for (auto& h : next.hypotheses_) {
        h.evidence.add(event.button, event.coloring[h.digit]);
        // Dead hypotheses never come back.
        h.consistent = h.consistent && !h.evidence.contradictory();
    }
    ++next.click_count_;
    return next;
}

DigitSet consistent_set(const BeliefState& belief)
{
    DigitSet out;
    for (const auto& h : belief.hypotheses())
        if (h.consistent) out.insert(h.digit);
    return out;
}

std::optional<Digit> inferred_digit(const BeliefState& belief)
{
    auto alive = consistent_set(belief);
    if (alive.size() != 1) return std::nullopt;
    return alive.digits().front();
}

bool all_inconsistent(const BeliefState& belief) { return consistent_set(belief).empty(); }

bool colors_known(const BeliefState& belief)
{
    const std::uint32_t all = belief.n_buttons() == 32 ? ~0U : (1U << belief.n_buttons()) - 1;
    std::optional<Evidence> shared;
    for (const auto& h : belief.hypotheses()) {
        if (!h.consistent) continue;
        if ((h.evidence.yellow | h.evidence.grey) != all) return false;
        if (shared && !(*shared == h.evidence)) return false;
        shared = h.evidence;
    }
    return shared.has_value();
}

ButtonMapping implied_mapping(const BeliefState& belief, Digit digit)
{
    const auto& h = belief.hypothesis(digit);
    if (!h.consistent)
        throw Error(ErrorCode::InconsistentHypothesis,
                    "hypothesis " + std::to_string(digit.value()) + " is inconsistent");
    ButtonMapping m(belief.n_buttons());
    for (int b = 0; b < belief.n_buttons(); ++b) {
        auto e = h.evidence.at(ButtonId{b});
        if (e.yellow) m.set(ButtonId{b}, Color::Yellow);
        if (e.grey) m.set(ButtonId{b}, Color::Grey);
    }
    return m;
}

BeliefState seed_evidence(const BeliefState& belief, const ButtonMapping& mapping)
{
    if (belief.click_count_ != 0)
        throw Error(ErrorCode::InvalidState, "can only seed a belief before any click");
    if (mapping.n_buttons() != belief.n_buttons_)
        throw Error(ErrorCode::InvalidArgument, "mapping has " + std::to_string(mapping.n_buttons()) +
                                                    " buttons, belief has " + std::to_string(belief.n_buttons_));
    BeliefState next = belief;
    for (int b = 0; b < belief.n_buttons_; ++b) {
        auto c = mapping.get(ButtonId{b});
        if (!c) continue;
        for (auto& h : next.hypotheses_) h.evidence.add(ButtonId{b}, *c);
    }
    return next;
}

DigitSet classic_intersect(DigitSet candidates, const Coloring& coloring, Color announced)
{
    return candidates & coloring.with_color(announced);
}

std::uint64_t count_valid_mappings(int n_buttons)
{
    if (n_buttons < 2 || n_buttons > 63)
        throw Error(ErrorCode::InvalidConfig, "mapping count needs 2..63 buttons, got " + std::to_string(n_buttons));
    return (std::uint64_t{1} << n_buttons) - 2;
}

}  // namespace iftt
