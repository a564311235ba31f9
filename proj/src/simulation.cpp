#include "iftt_pin/simulation.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <thread>

namespace iftt {

ButtonMapping random_valid_mapping(int n_buttons, Rng& rng)
{
    if (n_buttons < 2 || n_buttons > kMaxButtons)
        throw Error(ErrorCode::InvalidConfig, "n_buttons out of range: " + std::to_string(n_buttons));
    const std::uint64_t full = (std::uint64_t{1} << n_buttons) - 1;
    std::uint64_t bits;
    do {
        bits = rng.next() & full;
    } while (bits == 0 || bits == full);
    ButtonMapping m(n_buttons);
    for (int b = 0; b < n_buttons; ++b) m.set(ButtonId{b}, ((bits >> b) & 1U) ? Color::Yellow : Color::Grey);
    return m;
}

ButtonId choose_button(SimulatedUser& user, const Coloring& coloring, Rng& rng)
{
    const Color need = coloring[user.digit];
    auto valid = user.mapping.buttons_with(need);
    if (valid.empty()) throw Error(ErrorCode::InvalidState, "simulated user mapping lacks a color");

    ButtonId pick;
    const bool can_reuse = user.last_button && user.mapping.get(*user.last_button) == need;
    if (can_reuse && user.reuse_bias > 0.0 && rng.chance(user.reuse_bias))
        pick = *user.last_button;
    else
        pick = valid[static_cast<std::size_t>(rng.below(valid.size()))];
    user.last_button = pick;
    return pick;
}

PhaseRun run_phase(const PhaseSetup& setup, SimulatedUser& user, Rng& rng)
{
    if (setup.click_cap < 1) throw Error(ErrorCode::InvalidArgument, "click_cap must be at least 1");
    PhaseRun run{{}, {}, new_belief(setup.n_buttons)};
    if (setup.seed) run.belief = seed_evidence(run.belief, *setup.seed);

    while (true) {
        auto coloring = next_coloring(setup.policy, run.belief, rng);
        ClickEvent event{coloring, choose_button(user, coloring, rng)};
        run.belief = apply_click(run.belief, event);
        run.clicks.push_back(event);
        run.outcome.clicks_used = static_cast<int>(run.clicks.size());

        if (auto d = inferred_digit(run.belief)) {
            run.outcome.identified = d;
            break;
        }
        if (all_inconsistent(run.belief)) {
            run.outcome.all_inconsistent = true;
            break;
        }
        if (run.outcome.clicks_used >= setup.click_cap) {
            run.outcome.capped = true;
            break;
        }
    }
    return run;
}

namespace {

TrialRecord run_trial(const BatchConfig& config, int trial, std::uint64_t seed)
{
    auto rng = Rng::derive(seed, {static_cast<std::uint64_t>(trial)});
    SimulatedUser user;
    user.digit = Digit(static_cast<int>(rng.below(kDigitCount)));
    user.reuse_bias = config.reuse_bias;

    PhaseSetup setup{config.n_buttons, config.policy, config.click_cap, std::nullopt};
    if (config.mode == Mode::Classic) {
        user.mapping = classic_mapping();
        setup.n_buttons = 2;
        setup.seed = classic_mapping();
    } else {
        user.mapping = random_valid_mapping(config.n_buttons, rng);
    }

    auto run = run_phase(setup, user, rng);
    TrialRecord rec;
    rec.trial = trial;
    rec.digit = user.digit;
    rec.identified = run.outcome.identified;
    rec.clicks = run.outcome.clicks_used;
    rec.capped = run.outcome.capped;
    rec.all_inconsistent = run.outcome.all_inconsistent;
    if (rec.identified && *rec.identified == user.digit)
        rec.mapping_sound = implied_mapping(run.belief, user.digit).is_restriction_of(user.mapping);
    return rec;
}

}  // namespace

BatchResult run_batch(const BatchConfig& config, int trials, std::uint64_t seed)
{
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
    if (config.mode == Mode::SelfCal) new_belief(config.n_buttons);  // validates the button count

    BatchResult result;
    result.records.resize(static_cast<std::size_t>(trials));
    const unsigned workers = std::clamp(config.threads, 1U, static_cast<unsigned>(trials));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int i = static_cast<int>(w); i < trials; i += static_cast<int>(workers))
                    result.records[static_cast<std::size_t>(i)] = run_trial(config, i, seed);
            });
    }

    auto& s = result.stats;
    s.trials = trials;
    long total_clicks = 0;
    for (const auto& r : result.records) {
        if (r.identified) {
            ++s.identified;
            if (*r.identified != r.digit) ++s.wrong_digit;
            ++s.click_histogram[r.clicks];
            total_clicks += r.clicks;
        }
        if (!r.mapping_sound) ++s.mapping_violations;
    }
    s.success_rate = static_cast<double>(s.identified) / trials;
    s.wrong_digit_rate = static_cast<double>(s.wrong_digit) / trials;
    s.mean_clicks = s.identified ? static_cast<double>(total_clicks) / s.identified : 0.0;
    return result;
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records)
{
    out << "trial,digit,identified,clicks,capped\n";
    for (const auto& r : records) {
        out << r.trial << ',' << r.digit.value() << ',';
        if (r.identified) out << r.identified->value();
        out << ',' << r.clicks << ',' << (r.capped ? "true" : "false") << '\n';
    }
}

PinSession simulate_session(const SessionConfig& config, const std::vector<Digit>& pin,
                            const ButtonMapping& mapping, double reuse_bias, Rng& rng)
{
    if (static_cast<int>(pin.size()) != config.pin_length)
        throw Error(ErrorCode::InvalidArgument, "pin length does not match the session config");
    auto session = start_session(config);
    SimulatedUser user{pin.front(), mapping, reuse_bias, std::nullopt};
    while (session.status() == SessionStatus::InProgress) {
        user.digit = pin[session.committed_digits().size()];
        session = session_click(session, choose_button(user, session.current_coloring(), rng));
    }
    return session;
}

}  // namespace iftt
