#include <gtest/gtest.h>

#include <json.hpp>
#include <set>

#include "fixtures.hpp"
#include "iftt_pin/cracker.hpp"
#include "iftt_pin/simulation.hpp"

using namespace iftt;

namespace {

Transcript simulated(SessionConfig cfg, const std::vector<Digit>& pin, const ButtonMapping& mapping, double bias,
                     std::uint64_t seed)
{
    Rng rng(seed);
    return export_transcript(simulate_session(cfg, pin, mapping, bias, rng));
}

std::vector<ButtonMapping> all_valid_mappings(int n)
{
    std::vector<ButtonMapping> out;
    for (unsigned bits = 1; bits + 1 < (1U << n); ++bits) {
        ButtonMapping m(n);
        for (int b = 0; b < n; ++b) m.set(ButtonId{b}, ((bits >> b) & 1U) ? Color::Yellow : Color::Grey);
        out.push_back(m);
    }
    return out;
}

// Oracle: enumerate every (PIN, total mapping) pair and keep the PINs that
// explain every press of every non-abandoned phase.
std::set<std::string> brute_force(const Transcript& t)
{
    std::vector<const PhaseRecord*> positions;
    for (std::size_t i = 0; i < t.phases.size(); ++i)
        if (i + 1 == t.phases.size() || t.phases[i].committed) positions.push_back(&t.phases[i]);
    auto mappings = t.config.mode == Mode::Classic ? std::vector<ButtonMapping>{classic_mapping()}
                                                   : all_valid_mappings(t.config.n_buttons);
    std::set<std::string> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < positions.size(); ++i) total *= 10;
    for (std::size_t code = 0; code < total; ++code) {
        std::string pin(positions.size(), '0');
        std::size_t rest = code;
        for (std::size_t i = positions.size(); i-- > 0; rest /= 10) pin[i] = static_cast<char>('0' + rest % 10);
        for (const auto& m : mappings) {
            bool ok = true;
            for (std::size_t i = 0; i < positions.size() && ok; ++i)
                for (const auto& ev : positions[i]->clicks)
                    if (ev.coloring[Digit(pin[i] - '0')] != *m.get(ev.button)) {
                        ok = false;
                        break;
                    }
            if (ok) {
                out.insert(pin);
                break;
            }
        }
    }
    return out;
}

}  // namespace

TEST(Cracker, WorkedExampleLeavesThree)
{
    auto cands = crack_phase(test::example_clicks(), 9);
    ASSERT_EQ(cands.size(), 1U);
    EXPECT_EQ(cands[0].digit.value(), 3);
    EXPECT_EQ(cands[0].mapping.to_string(), "Y?Y?G?G?G");
}

TEST(Cracker, OneClickLeavesEveryDigit)
{
    auto clicks = test::example_clicks();
    test::keep_first(clicks, 1);
    auto cands = crack_phase(clicks, 9);
    ASSERT_EQ(cands.size(), 10U);
    EXPECT_EQ(cands[0].mapping.to_string(), "Y????????");
    EXPECT_EQ(cands[1].mapping.to_string(), "G????????");
    EXPECT_EQ(crack_phase({}, 9).size(), 10U);
}

TEST(Cracker, MatchesBruteForceOnSmallPads)
{
    // Partial sessions (capped early) so that many PINs remain.
    for (int n : {2, 3, 4}) {
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            SessionConfig cfg{Mode::SelfCal, n, 3, PolicyKind::RandomBalanced, seed, true, 200};
            Rng rng(seed);
            auto mapping = random_valid_mapping(n, rng);
            std::vector<Digit> pin{Digit(int(seed % 10)), Digit(int((seed * 7) % 10)), Digit(2)};
            auto t = simulated(cfg, pin, mapping, 0.2, seed);
            // Cut every phase to its first two presses.
            for (auto& p : t.phases)
                test::keep_first(p.clicks, 2);
            auto report = crack_transcript(t);
            auto expect = brute_force(t);
            ASSERT_FALSE(report.truncated);
            EXPECT_EQ(std::set<std::string>(report.pin_candidates.begin(), report.pin_candidates.end()), expect)
                << "n=" << n << " seed=" << seed;
            EXPECT_EQ(report.candidate_count, expect.size());
            std::string truth;
            for (Digit d : pin) truth.push_back(static_cast<char>('0' + d.value()));
            EXPECT_TRUE(expect.count(truth));
        }
    }
}

TEST(Cracker, CompleteSessionIsUnique)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        SessionConfig cfg;
        cfg.seed = seed;
        Rng rng(seed ^ 0xabcdef);
        auto mapping = random_valid_mapping(9, rng);
        std::vector<Digit> pin{Digit(int(seed % 10)), Digit(4), Digit(int((seed / 3) % 10)), Digit(0)};
        auto t = simulated(cfg, pin, mapping, 0.5, seed);
        auto report = crack_transcript(t);
        ASSERT_TRUE(report.unique) << seed;
        std::string truth;
        for (Digit d : pin) truth.push_back(static_cast<char>('0' + d.value()));
        EXPECT_EQ(report.pin_candidates, std::vector<std::string>{truth});
        EXPECT_TRUE(report.mapping_constraints.is_restriction_of(mapping));
    }
}

TEST(Cracker, OneClickPerPhaseIsAmbiguous)
{
    SessionConfig cfg;
    cfg.seed = 3;
    Rng rng(3);
    auto t = simulated(cfg, {Digit(1), Digit(2), Digit(3), Digit(4)}, random_valid_mapping(9, rng), 0.0, 3);
    for (auto& p : t.phases) test::keep_first(p.clicks, 1);
    auto report = crack_transcript(t);
    EXPECT_FALSE(report.unique);
    EXPECT_GT(report.candidate_count, 1U);
    EXPECT_NE(std::find(report.pin_candidates.begin(), report.pin_candidates.end(), "1234"),
              report.pin_candidates.end());
}

TEST(Cracker, AbandonedPhaseIsSkipped)
{
    SessionConfig cfg{Mode::SelfCal, 3, 1, PolicyKind::RandomBalanced, 6, true, 200};
    auto s = start_session(cfg);
    s = session_click(s, ButtonId{0});
    s = session_reset(s);
    Rng rng(6);
    auto mapping = ButtonMapping::parse("YGG");
    SimulatedUser user{Digit(7), mapping, 0.0, std::nullopt};
    while (s.status() == SessionStatus::InProgress) s = session_click(s, choose_button(user, s.current_coloring(), rng));
    auto report = crack_transcript(export_transcript(s));
    ASSERT_EQ(report.phases.size(), 2U);
    EXPECT_TRUE(report.phases[0].abandoned);
    EXPECT_FALSE(report.phases[1].abandoned);
    EXPECT_TRUE(report.unique);
    EXPECT_EQ(report.pin_candidates, std::vector<std::string>{"7"});
}

TEST(Cracker, ClassicMatchesIntersection)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SessionConfig cfg{Mode::Classic, 2, 2, PolicyKind::RandomBalanced, seed, true, 200};
        auto t = simulated(cfg, {Digit(int(seed % 10)), Digit(9)}, classic_mapping(), 0.0, seed);
        for (auto& p : t.phases)
            test::keep_first(p.clicks, 1);
        auto report = crack_transcript(t);
        std::set<std::string> expect;
        auto set_of = [&](const PhaseRecord& p) {
            DigitSet s = DigitSet::all();
            for (const auto& ev : p.clicks)
                s = classic_intersect(s, ev.coloring, ev.button.index == 0 ? Color::Yellow : Color::Grey);
            return s;
        };
        for (Digit a : set_of(t.phases[0]).digits())
            for (Digit b : set_of(t.phases[1]).digits())
                expect.insert(std::string{char('0' + a.value()), char('0' + b.value())});
        EXPECT_EQ(std::set<std::string>(report.pin_candidates.begin(), report.pin_candidates.end()), expect);
        EXPECT_EQ(report.mapping_constraints.to_string(), "YG");
    }
}

TEST(Cracker, Truncation)
{
    // Six untouched positions: 10^6 candidates, far past the cap.
    Transcript t;
    t.config.pin_length = 6;
    t.phases.resize(1);
    t.phases[0].committed = Digit(0);
    for (int i = 0; i < 5; ++i) t.phases.push_back(PhaseRecord{{}, Digit(0)});
    auto report = crack_transcript(t);
    EXPECT_TRUE(report.truncated);
    EXPECT_FALSE(report.unique);
    EXPECT_TRUE(report.pin_candidates.empty());
    EXPECT_GT(report.candidate_count, kMaxPinCandidates);
    auto doc = nlohmann::json::parse(report_to_json(report));
    EXPECT_EQ(doc["truncated"], true);
}

TEST(Cracker, JsonShape)
{
    auto s = start_session(test::example_session_config());
    for (int b : test::kExampleSessionButtons) s = session_click(s, ButtonId{b});
    auto doc = nlohmann::json::parse(report_to_json(crack_transcript(export_transcript(s))));
    EXPECT_EQ(doc["phases"].size(), 2U);
    EXPECT_EQ(doc["phases"][0]["count"], 1);
    EXPECT_EQ(doc["phases"][0]["candidates"][0]["digit"], 3);
    EXPECT_EQ(doc["phases"][1]["count"], 10);
    EXPECT_EQ(doc["candidate_count"], 10);
    EXPECT_EQ(doc["unique"], false);
}
