#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "iftt_pin/engine.hpp"
#include "iftt_pin/policies.hpp"
#include "iftt_pin/session.hpp"

namespace iftt {

/// A perfectly consistent user: always presses a button whose private color
/// matches the color currently shown on their digit.
struct SimulatedUser {
    Digit digit{0};
    ButtonMapping mapping{2};
    // Probability of pressing the previous button again when it still fits.
    double reuse_bias = 0.0;
    std::optional<ButtonId> last_button;
};

// Uniform over the 2^n - 2 total mappings that use both colors.
ButtonMapping random_valid_mapping(int n_buttons, Rng& rng);

ButtonId choose_button(SimulatedUser& user, const Coloring& coloring, Rng& rng);

struct PhaseOutcome {
    std::optional<Digit> identified;
    int clicks_used = 0;
    bool capped = false;
    bool all_inconsistent = false;
};

struct PhaseSetup {
    int n_buttons = 9;
    PolicyKind policy = PolicyKind::RandomBalanced;
    int click_cap = 200;
    std::optional<ButtonMapping> seed;  // known colors, e.g. the classic pair
};

struct PhaseRun {
    std::vector<ClickEvent> clicks;
    PhaseOutcome outcome;
    BeliefState belief;
};

/// Coloring, click, update until one hypothesis is left, none is, or the
/// cap is hit.
PhaseRun run_phase(const PhaseSetup& setup, SimulatedUser& user, Rng& rng);

struct BatchConfig {
    Mode mode = Mode::SelfCal;
    int n_buttons = 9;
    PolicyKind policy = PolicyKind::RandomBalanced;
    int click_cap = 200;
    double reuse_bias = 0.0;
    unsigned threads = 1;
};

struct TrialRecord {
    int trial = 0;
    Digit digit{0};
    std::optional<Digit> identified;
    int clicks = 0;
    bool capped = false;
    bool all_inconsistent = false;
    // Implied mapping at identification is a restriction of the hidden one.
    bool mapping_sound = true;
};

struct SimStats {
    int trials = 0;
    int identified = 0;
    int wrong_digit = 0;
    int mapping_violations = 0;
    double success_rate = 0.0;
    double wrong_digit_rate = 0.0;
    double mean_clicks = 0.0;             // over identified trials
    std::map<int, int> click_histogram;   // clicks -> identified trials
};

struct BatchResult {
    std::vector<TrialRecord> records;
    SimStats stats;
};

/// Trial i draws its digit, hidden mapping and colorings from
/// Rng::derive(seed, {i}), so the result does not depend on `threads`.
BatchResult run_batch(const BatchConfig& config, int trials, std::uint64_t seed);

// Header "trial,digit,identified,clicks,capped"; identified empty when absent.
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);

/// Drives a full session with a consistent user entering `pin` under
/// `mapping`. Stops at Complete or at the first non-InProgress status.
PinSession simulate_session(const SessionConfig& config, const std::vector<Digit>& pin,
                            const ButtonMapping& mapping, double reuse_bias, Rng& rng);

}  // namespace iftt
