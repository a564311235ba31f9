#include "iftt_pin/cli.hpp"

#include <pthread.h>
#include <signal.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "iftt_pin/bridge.hpp"
#include "iftt_pin/cracker.hpp"
#include "iftt_pin/simulation.hpp"
#include "iftt_pin/transcript.hpp"

namespace iftt::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --seed, else IFTT_PIN_SEED, else fresh entropy.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag)
{
    if (flag) return *flag;
    if (const char* env = std::getenv("IFTT_PIN_SEED")) {
        try {
            std::size_t used = 0;
            auto v = std::stoull(env, &used);
            if (used != std::string_view(env).size()) throw std::invalid_argument(env);
            return v;
        } catch (const std::exception&) {
            throw UsageError(std::string("IFTT_PIN_SEED is not an unsigned integer: ") + env);
        }
    }
    std::random_device rd;
    return (std::uint64_t{rd()} << 32) | rd();
}

struct SessionFlags {
    std::string mode = "selfcal";
    std::optional<int> buttons;
    std::optional<std::uint64_t> seed;
    std::string policy = "random_balanced";
    bool carryover = true;
    int pin_length = 4;
    int cap = 200;

    void add_to(CLI::App* cmd)
    {
        cmd->add_option("--mode", mode, "classic or selfcal")->check(CLI::IsMember({"classic", "selfcal"}));
        cmd->add_option("--buttons", buttons, "number of buttons (classic: 2)");
        cmd->add_option("--seed", seed, "random seed (default: $IFTT_PIN_SEED, else random)");
        cmd->add_option("--policy", policy, "random_balanced or bisect")
            ->check(CLI::IsMember({"random_balanced", "bisect"}));
        cmd->add_option("--carryover", carryover, "seed later digits with learned button colors");
        cmd->add_option("--pin-length", pin_length, "digits in the PIN")->check(CLI::PositiveNumber);
        cmd->add_option("--cap", cap, "click cap per digit")->check(CLI::PositiveNumber);
    }

    SessionConfig to_config(int max_buttons) const
    {
        SessionConfig cfg;
        cfg.mode = mode_from_string(mode);
        cfg.n_buttons = buttons.value_or(cfg.mode == Mode::Classic ? 2 : 9);
        if (cfg.mode == Mode::Classic && cfg.n_buttons != 2) throw UsageError("classic mode uses exactly 2 buttons");
        if (cfg.n_buttons < 2 || cfg.n_buttons > max_buttons)
            throw UsageError("--buttons must be between 2 and " + std::to_string(max_buttons));
        cfg.policy = policy_from_string(policy);
        cfg.carryover = carryover;
        cfg.pin_length = pin_length;
        cfg.click_cap = cap;
        cfg.seed = resolve_seed(seed);
        cfg.validate();
        return cfg;
    }
};

// ---- demo ----------------------------------------------------------------

class DemoRenderer {
public:
    DemoRenderer(std::ostream& out, bool color) : out_(out), color_(color) {}

    std::string swatch(std::optional<Color> c, const std::string& text) const
    {
        if (!color_ || !c) return text;
        return std::string(*c == Color::Yellow ? "\x1b[30;43m" : "\x1b[30;47m") + text + "\x1b[0m";
    }

    void render(const PinSession& s, bool dashboard) const
    {
        const auto view = current_view(s);
        out_ << "\nPIN   ";
        for (int i = 0; i < view.pin_length; ++i) out_ << (i < view.committed ? "* " : "_ ");
        out_ << "  (" << to_string(view.status) << ")\n";

        out_ << "digit ";
        for (int d = 0; d < kDigitCount; ++d) out_ << ' ' << d << ' ';
        out_ << "\ncolor ";
        for (int d = 0; d < kDigitCount; ++d) {
            Color c = view.digit_colors.at(d);
            out_ << swatch(c, std::string(" ") + to_char(c) + " ");
        }
        out_ << "\nkeys  ";
        for (std::size_t b = 0; b < view.buttons.size(); ++b) {
            std::string label = "[" + std::to_string(b + 1);
            if (view.buttons[b]) label += std::string(":") + to_char(*view.buttons[b]);
            label += "]";
            out_ << swatch(view.buttons[b], label) << ' ';
        }
        out_ << '\n';
        if (dashboard) render_dashboard(view);
    }

    void render_dashboard(const ViewState& view) const
    {
        out_ << "\n  hyp |";
        for (std::size_t b = 0; b < view.buttons.size(); ++b) out_ << ' ' << b + 1;
        out_ << '\n';
        for (const auto& row : view.dashboard) {
            out_ << "    " << row.digit.value() << " |";
            for (const auto& e : row.dots) {
                char ch = e.contradictory() ? 'X' : e.yellow ? 'Y' : e.grey ? 'G' : '.';
                std::optional<Color> c;
                if (!e.contradictory() && e.size() == 1) c = e.yellow ? Color::Yellow : Color::Grey;
                out_ << ' ' << swatch(c, std::string(1, ch));
            }
            out_ << (row.consistent ? "" : "   eliminated") << '\n';
        }
    }

private:
    std::ostream& out_;
    bool color_;
};

int cmd_demo(const SessionConfig& cfg, bool color, bool dashboard, std::istream& in, std::ostream& out)
{
    DemoRenderer ui(out, color);
    auto session = start_session(cfg);
    out << (cfg.mode == Mode::Classic ? "Classic mode: key 1 means yellow, key 2 means grey.\n"
                                      : "Pick a color for each key in your head and use it consistently.\n")
        << "Press the key whose color matches your digit. d = dashboard, r = reset, q = quit.\n";
    ui.render(session, dashboard);

    std::string line;
    while (std::getline(in, line)) {
        for (char ch : line) {
            if (ch == 'q') return kOk;
            if (ch == 'd') {
                dashboard = !dashboard;
            } else if (ch == 'r') {
                if (session.status() == SessionStatus::Complete) continue;
                session = session_reset(session);
                out << "phase restarted\n";
            } else if (ch >= '1' && ch <= '9') {
                int b = ch - '1';
                if (b >= cfg.n_buttons) {
                    out << "no key " << ch << " in this layout\n";
                    continue;
                }
                if (session.status() != SessionStatus::InProgress) {
                    out << "phase ended (" << to_string(session.status()) << "), press r to restart it\n";
                    continue;
                }
                auto before = session.committed_digits().size();
                session = session_click(session, ButtonId{b});
                if (session.committed_digits().size() > before) out << "digit " << before + 1 << " entered\n";
                if (session.status() == SessionStatus::AllInconsistent)
                    out << "no digit fits those presses; press r to restart this digit\n";
                if (session.status() == SessionStatus::Capped)
                    out << "click cap reached; press r to restart this digit\n";
            } else {
                continue;
            }
            ui.render(session, dashboard);
            if (session.status() == SessionStatus::Complete) {
                std::string pin;
                for (Digit d : session.committed_digits()) pin += static_cast<char>('0' + d.value());
                out << "\nYour PIN: " << pin << "\nYour keys:";
                for (int k = 0; k < cfg.n_buttons; ++k) {
                    auto c = session.learned_mapping().get(ButtonId{k});
                    out << ' ' << k + 1 << '=' << (c ? to_char(*c) : '?');
                }
                out << '\n';
                return kOk;
            }
        }
    }
    out << "input closed\n";
    return kOk;
}

// ---- simulate ------------------------------------------------------------

int cmd_simulate(const SessionConfig& cfg, int trials, double reuse_bias, unsigned threads,
                 const std::string& csv_path, std::ostream& out, std::ostream& err)
{
    BatchConfig bc;
    bc.mode = cfg.mode;
    bc.n_buttons = cfg.n_buttons;
    bc.policy = cfg.policy;
    bc.click_cap = cfg.click_cap;
    bc.reuse_bias = reuse_bias;
    bc.threads = threads;
    auto result = run_batch(bc, trials, cfg.seed);

    if (csv_path.empty()) {
        write_csv(out, result.records);
    } else {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) {
            err << "cannot write " << csv_path << '\n';
            return kUsage;
        }
        write_csv(f, result.records);
    }

    const auto& s = result.stats;
    std::ostringstream summary;
    summary.imbue(std::locale::classic());
    summary << "# seed: " << cfg.seed << '\n'
            << "# trials: " << s.trials << '\n'
            << "# identified: " << s.identified << '\n'
            << "# success_rate: " << s.success_rate << '\n'
            << "# wrong_digit_rate: " << s.wrong_digit_rate << '\n'
            << "# mean_clicks: " << s.mean_clicks << '\n'
            << "# histogram:";
    for (const auto& [clicks, n] : s.click_histogram) summary << ' ' << clicks << ':' << n;
    summary << '\n';
    out << summary.str();
    return kOk;
}

// ---- crack ---------------------------------------------------------------

int cmd_crack(const std::string& path, std::istream& in, std::ostream& out, std::ostream& err)
{
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(in), {});
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) {
            err << "cannot read " << path << '\n';
            return kParseFailure;
        }
        text.assign(std::istreambuf_iterator<char>(f), {});
    }

    CrackReport report;
    try {
        report = crack_transcript(import_transcript(text));
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kParseFailure;
    }
    out << report_to_json(report);
    return report.unique ? kOk : kAmbiguous;
}

// ---- serve ---------------------------------------------------------------

int cmd_serve(const SessionConfig& defaults, std::uint16_t port, std::ostream& out, std::ostream& err)
{
    BridgeServer server(defaults);
    try {
        server.bind(port);
    } catch (const BindError& e) {
        err << "error: " << e.what() << '\n';
        return kBindFailure;
    }

    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);
    std::thread waiter([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    });

    out << "listening on 127.0.0.1:" << server.port() << " (mode " << to_string(defaults.mode) << ", seed "
        << defaults.seed << ")" << std::endl;
    server.serve();
    waiter.join();
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Self-calibrating PIN entry: demo, simulation, transcript cracking and UI bridge", "iftt-pin"};
    app.require_subcommand(1);

    SessionFlags demo_flags;
    bool no_color = false;
    bool show_dashboard = false;
    auto* demo = app.add_subcommand("demo", "enter a PIN interactively in the terminal");
    demo_flags.add_to(demo);
    demo->add_flag("--no-color", no_color, "plain text output");
    demo->add_flag("--dashboard", show_dashboard, "show the hypothesis dashboard from the start");

    SessionFlags sim_flags;
    int trials = 1000;
    double reuse_bias = 0.0;
    unsigned threads = 1;
    std::string csv_path;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo runs with simulated consistent users");
    sim_flags.add_to(simulate);
    simulate->add_option("--trials", trials, "number of simulated digit entries")->check(CLI::PositiveNumber);
    simulate->add_option("--reuse-bias", reuse_bias, "probability of pressing the previous key again")
        ->check(CLI::Range(0.0, 1.0));
    simulate->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    simulate->add_option("--csv", csv_path, "write the per-trial CSV here instead of stdout");

    std::string transcript_path;
    auto* crack = app.add_subcommand("crack", "recover the PIN from an observed transcript");
    crack->add_option("transcript", transcript_path, "transcript JSON file, or - for stdin")->required();

    SessionFlags serve_flags;
    int port = 8080;
    auto* serve = app.add_subcommand("serve", "host sessions for the browser UI over newline-delimited JSON");
    serve_flags.add_to(serve);
    serve->add_option("--port", port, "TCP port on 127.0.0.1")->check(CLI::Range(0, 65535));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (*demo) {
            bool tty = &out == &std::cout && ::isatty(STDOUT_FILENO) && std::getenv("NO_COLOR") == nullptr;
            return cmd_demo(demo_flags.to_config(9), tty && !no_color, show_dashboard, in, out);
        }
        if (*simulate)
            return cmd_simulate(sim_flags.to_config(kMaxButtons), trials, reuse_bias, threads, csv_path, out, err);
        if (*crack) return cmd_crack(transcript_path, in, out, err);
        if (*serve) return cmd_serve(serve_flags.to_config(kMaxButtons), static_cast<std::uint16_t>(port), out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::Parse ? kParseFailure : kUsage;
    }
    return kUsage;
}

}  // namespace iftt::cli
