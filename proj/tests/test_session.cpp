#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "iftt_pin/session.hpp"
#include "iftt_pin/simulation.hpp"

using namespace iftt;

TEST(Session, StartClassicIsSeeded)
{
    SessionConfig cfg{Mode::Classic, 2, 4, PolicyKind::RandomBalanced, 1, true, 200};
    auto s = start_session(cfg);
    EXPECT_EQ(s.status(), SessionStatus::InProgress);
    EXPECT_EQ(s.current_belief().evidence(Digit(0), ButtonId{0}), (EvidenceSet{true, false}));
    EXPECT_EQ(s.current_belief().evidence(Digit(7), ButtonId{1}), (EvidenceSet{false, true}));
    auto view = current_view(s);
    ASSERT_EQ(view.buttons.size(), 2U);
    EXPECT_EQ(view.buttons[0], Color::Yellow);
    EXPECT_EQ(view.buttons[1], Color::Grey);
}

TEST(Session, StartSelfCalIsEmpty)
{
    auto s = start_session(SessionConfig{});
    for (const auto& h : s.current_belief().hypotheses()) EXPECT_TRUE(h.evidence.empty());
    auto view = current_view(s);
    EXPECT_EQ(view.buttons, std::vector<std::optional<Color>>(9));
    EXPECT_EQ(view.digit_colors.yellow().size(), 5);
    EXPECT_EQ(view.committed, 0);
    EXPECT_EQ(view.pin_length, 4);
    for (const auto& row : view.dashboard)
        for (const auto& dot : row.dots) EXPECT_EQ(dot.size(), 0);
}

TEST(Session, InvalidConfigs)
{
    auto bad = [](SessionConfig c) {
        try {
            start_session(c);
        } catch (const Error& e) {
            return e.code() == ErrorCode::InvalidConfig;
        }
        return false;
    };
    SessionConfig c;
    c.pin_length = 0;
    EXPECT_TRUE(bad(c));
    c = {};
    c.n_buttons = 1;
    EXPECT_TRUE(bad(c));
    c = {};
    c.mode = Mode::Classic;  // 9 buttons
    EXPECT_TRUE(bad(c));
    c = {};
    c.click_cap = 0;
    EXPECT_TRUE(bad(c));
}

TEST(Session, WorkedExampleCommitsThree)
{
    auto s = start_session(test::example_session_config());
    // First shown coloring: 0 and 3 yellow, 1 and 2 grey.
    EXPECT_EQ(s.current_coloring().yellow() & DigitSet::of({0, 1, 2, 3}), DigitSet::of({0, 3}));
    for (std::size_t i = 0; i < test::kExampleSessionButtons.size(); ++i) {
        s = session_click(s, ButtonId{test::kExampleSessionButtons[i]});
        auto alive = consistent_set(s.current_belief()) & DigitSet::of({0, 1, 2, 3});
        if (i == 0) {
            auto view = current_view(s);
            EXPECT_EQ(view.dashboard[0].dots[0], (EvidenceSet{true, false}));
            EXPECT_EQ(view.dashboard[3].dots[0], (EvidenceSet{true, false}));
            EXPECT_EQ(view.dashboard[1].dots[0], (EvidenceSet{false, true}));
        }
        if (i == 3) EXPECT_EQ(alive, DigitSet::of({1, 3}));
        if (i < 7) EXPECT_TRUE(s.committed_digits().empty());
    }
    ASSERT_EQ(s.committed_digits().size(), 1U);
    EXPECT_EQ(s.committed_digits()[0].value(), 3);
    EXPECT_EQ(s.phases().size(), 2U);
    EXPECT_EQ(s.phases()[0].committed, Digit(3));
    // Buttons stay neutral until the whole PIN is in.
    for (const auto& b : current_view(s).buttons) EXPECT_FALSE(b);
    // Learned colors are what 3 showed at each press.
    ButtonMapping expect(9);
    for (const auto& ev : s.phases()[0].clicks) expect.set(ev.button, ev.coloring[Digit(3)]);
    EXPECT_EQ(s.learned_mapping(), expect);
    EXPECT_EQ(s.learned_mapping().assigned_count(), 4);
    // The new phase is carried over.
    EXPECT_EQ(s.current_belief().evidence(Digit(5), ButtonId{0}), (EvidenceSet{true, false}));
}

TEST(Session, ClickErrors)
{
    auto s = start_session(SessionConfig{});
    try {
        session_click(s, ButtonId{9});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
    }
    SessionConfig one;
    one.pin_length = 1;
    one.seed = test::kExampleSessionSeed;
    auto done = start_session(one);
    for (int b : test::kExampleSessionButtons) done = session_click(done, ButtonId{b});
    EXPECT_EQ(done.status(), SessionStatus::Complete);
    try {
        session_click(done, ButtonId{0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidState);
    }
    EXPECT_THROW(session_reset(done), Error);
    // Complete reveals the learned colors.
    auto view = current_view(done);
    for (int b = 0; b < 9; ++b) EXPECT_EQ(view.buttons[b], done.learned_mapping().get(ButtonId{b}));
    EXPECT_FALSE(view.buttons[3]);
}

TEST(Session, CapThenReset)
{
    SessionConfig cfg;
    cfg.click_cap = 1;
    auto s = session_click(start_session(cfg), ButtonId{0});
    EXPECT_EQ(s.status(), SessionStatus::Capped);
    EXPECT_THROW(session_click(s, ButtonId{0}), Error);
    auto r = session_reset(s);
    EXPECT_EQ(r.status(), SessionStatus::InProgress);
    EXPECT_EQ(r.phases().size(), 2U);
    EXPECT_TRUE(r.phase_clicks().empty());
    EXPECT_FALSE(r.phases()[0].committed);
}

TEST(Session, ColoringIsFunctionOfSeedPhaseClick)
{
    SessionConfig cfg;
    cfg.seed = 99;
    auto a = start_session(cfg);
    auto b = start_session(cfg);
    EXPECT_EQ(a.current_coloring(), b.current_coloring());
    EXPECT_EQ(a.current_coloring(), draw_coloring(cfg, 0, 0, a.current_belief()));
    // Pressing different buttons leaves the next random coloring unchanged.
    a = session_click(a, ButtonId{0});
    b = session_click(b, ButtonId{5});
    EXPECT_EQ(a.current_coloring(), b.current_coloring());
    EXPECT_EQ(a.current_coloring(), draw_coloring(cfg, 0, 1, a.current_belief()));
    cfg.seed = 100;
    EXPECT_NE(start_session(cfg).current_coloring(), start_session(SessionConfig{}).current_coloring());
}

TEST(Session, SessionClickIsPure)
{
    auto s = start_session(SessionConfig{});
    auto before = current_view(s);
    auto next = session_click(s, ButtonId{2});
    EXPECT_EQ(current_view(s), before);
    EXPECT_EQ(current_view(session_click(s, ButtonId{2})), current_view(next));
}

TEST(Session, CarryoverTotalMappingMakesClassicSpeed)
{
    // Once every button color is known, later digits fall like classic bisect.
    SessionConfig cfg{Mode::SelfCal, 2, 3, PolicyKind::Bisect, 0, true, 200};
    int classic_like = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        cfg.seed = seed;
        Rng rng(seed);
        std::vector<Digit> pin{Digit(static_cast<int>(seed % 10)), Digit(4), Digit(8)};
        auto s = simulate_session(cfg, pin, classic_mapping(), 0.0, rng);
        ASSERT_EQ(s.status(), SessionStatus::Complete);
        ASSERT_EQ(s.committed_digits(), pin);
        ASSERT_EQ(s.learned_mapping().to_string(), "YG");
        // Colors learned before each phase; once total, the phase is classic.
        ButtonMapping known(2);
        for (const auto& phase : s.phases()) {
            if (known.is_total()) {
                EXPECT_LE(phase.clicks.size(), 4U);
                ++classic_like;
            }
            for (const auto& ev : phase.clicks) known.set(ev.button, ev.coloring[*phase.committed]);
        }
    }
    EXPECT_GT(classic_like, 50);
}

TEST(Session, DashboardRecomputableFromPublicClicks)
{
    // Rebuild every intermediate dashboard from the public record alone:
    // colorings and presses, with commits recomputed by the engine.
    SessionConfig cfg;
    cfg.seed = 5;
    Rng rng(5);
    auto mapping = random_valid_mapping(9, rng);
    std::vector<Digit> pin{Digit(2), Digit(0), Digit(2), Digit(6)};
    auto s = start_session(cfg);
    SimulatedUser user{pin[0], mapping, 0.0, std::nullopt};

    ButtonMapping observed(9);
    auto belief = new_belief(9);
    while (s.status() == SessionStatus::InProgress) {
        user.digit = pin[s.committed_digits().size()];
        ClickEvent ev{s.current_coloring(), choose_button(user, s.current_coloring(), rng)};
        s = session_click(s, ev.button);
        belief = apply_click(belief, ev);
        if (auto d = inferred_digit(belief)) {
            observed = observed.merged(implied_mapping(belief, *d));
            if (s.status() == SessionStatus::Complete) break;
            belief = seed_evidence(new_belief(9), observed);
        }
        EXPECT_EQ(current_view(s).dashboard, dashboard_rows(belief));
    }
    EXPECT_EQ(s.status(), SessionStatus::Complete);
}

TEST(Session, SelfCalBisectDoesNotStall)
{
    // Bisect only kicks in once the key colors are known; before that a
    // mirrored pair of survivors would otherwise never be separated.
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SessionConfig cfg{Mode::SelfCal, 2, 2, PolicyKind::Bisect, seed, true, 200};
        Rng rng(seed);
        auto s = simulate_session(cfg, {Digit(int(seed % 10)), Digit(1)}, ButtonMapping::parse("GY"), 0.0, rng);
        EXPECT_EQ(s.status(), SessionStatus::Complete) << seed;
    }
}
