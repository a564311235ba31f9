#include "iftt_pin/transcript.hpp"

#include <set>

#include <json.hpp>

namespace iftt {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw Error(ErrorCode::Parse, "transcript field '" + path + "': " + what);
}

const json& field(const json& obj, const char* key, const std::string& path)
{
    auto it = obj.find(key);
    if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path)
{
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) fail(path.empty() ? key : path + "." + key, "unknown field");
}

int int_field(const json& obj, const char* key, const std::string& path)
{
    const auto& v = field(obj, key, path);
    if (!v.is_number_integer()) fail(path.empty() ? key : path + "." + key, "expected an integer");
    auto x = v.get<std::int64_t>();
    if (x < INT32_MIN || x > INT32_MAX) fail(path.empty() ? key : path + "." + key, "integer out of range");
    return static_cast<int>(x);
}

std::string string_field(const json& obj, const char* key, const std::string& path)
{
    const auto& v = field(obj, key, path);
    if (!v.is_string()) fail(path.empty() ? key : path + "." + key, "expected a string");
    return v.get<std::string>();
}

}  // namespace

Transcript export_transcript(const PinSession& session)
{
    Transcript t;
    t.config = session.config();
    t.phases = session.phases();
    return t;
}

std::string serialize_transcript(const Transcript& t)
{
    ordered_json doc;
    doc["version"] = t.version;
    doc["mode"] = std::string(to_string(t.config.mode));
    doc["n_buttons"] = t.config.n_buttons;
    doc["pin_length"] = t.config.pin_length;
    doc["seed"] = t.config.seed;
    doc["policy"] = std::string(to_string(t.config.policy));
    doc["carryover"] = t.config.carryover;
    doc["phases"] = ordered_json::array();
    for (const auto& phase : t.phases) {
        ordered_json p;
        p["clicks"] = ordered_json::array();
        for (const auto& c : phase.clicks)
            p["clicks"].push_back(ordered_json{{"coloring", c.coloring.to_string()}, {"button", c.button.index}});
        p["committed"] = phase.committed ? ordered_json(phase.committed->value()) : ordered_json(nullptr);
        doc["phases"].push_back(std::move(p));
    }
    return doc.dump(2) + "\n";
}

Transcript import_transcript(std::string_view document)
{
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string("malformed transcript JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("$", "expected an object");
    check_keys(doc, {"version", "mode", "n_buttons", "pin_length", "seed", "policy", "carryover", "phases"}, "");

    Transcript t;
    t.version = int_field(doc, "version", "");
    if (t.version != kTranscriptVersion)
        fail("version", "unsupported version " + std::to_string(t.version) + ", expected " +
                            std::to_string(kTranscriptVersion));
    try {
        t.config.mode = mode_from_string(string_field(doc, "mode", ""));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse) throw;
        fail("mode", e.what());
    }
    t.config.n_buttons = int_field(doc, "n_buttons", "");
    t.config.pin_length = int_field(doc, "pin_length", "");
    const auto& seed = field(doc, "seed", "");
    if (!seed.is_number_unsigned()) fail("seed", "expected a non-negative integer");
    t.config.seed = seed.get<std::uint64_t>();
    try {
        t.config.policy = policy_from_string(string_field(doc, "policy", ""));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse) throw;
        fail("policy", e.what());
    }
    const auto& carry = field(doc, "carryover", "");
    if (!carry.is_boolean()) fail("carryover", "expected a boolean");
    t.config.carryover = carry.get<bool>();
    try {
        t.config.validate();
    } catch (const Error& e) {
        fail("$", e.what());
    }

    const auto& phases = field(doc, "phases", "");
    if (!phases.is_array()) fail("phases", "expected an array");
    for (std::size_t i = 0; i < phases.size(); ++i) {
        const std::string ppath = "phases[" + std::to_string(i) + "]";
        const auto& p = phases[i];
        if (!p.is_object()) fail(ppath, "expected an object");
        check_keys(p, {"clicks", "committed"}, ppath);
        PhaseRecord rec;
        const auto& clicks = field(p, "clicks", ppath);
        if (!clicks.is_array()) fail(ppath + ".clicks", "expected an array");
        for (std::size_t k = 0; k < clicks.size(); ++k) {
            const std::string cpath = ppath + ".clicks[" + std::to_string(k) + "]";
            const auto& c = clicks[k];
            if (!c.is_object()) fail(cpath, "expected an object");
            check_keys(c, {"coloring", "button"}, cpath);
            auto text = string_field(c, "coloring", cpath);
            std::optional<Coloring> coloring;
            try {
                coloring = Coloring::parse(text);
            } catch (const Error& e) {
                fail(cpath + ".coloring", e.what());
            }
            int button = int_field(c, "button", cpath);
            if (button < 0 || button >= t.config.n_buttons)
                fail(cpath + ".button", "button " + std::to_string(button) + " outside 0.." +
                                            std::to_string(t.config.n_buttons - 1));
            rec.clicks.push_back(ClickEvent{*coloring, ButtonId{button}});
        }
        const auto& committed = field(p, "committed", ppath);
        if (!committed.is_null()) {
            if (!committed.is_number_integer()) fail(ppath + ".committed", "expected an integer or null");
            auto d = committed.get<std::int64_t>();
            if (d < 0 || d > 9) fail(ppath + ".committed", "digit out of range");
            rec.committed = Digit(static_cast<int>(d));
        }
        t.phases.push_back(std::move(rec));
    }
    return t;
}

PinSession replay_transcript(const Transcript& t, int click_cap)
{
    SessionConfig cfg = t.config;
    cfg.click_cap = click_cap;
    PinSession s = start_session(cfg);
    for (std::size_t i = 0; i < t.phases.size(); ++i) {
        const auto& phase = t.phases[i];
        if (i > 0 && s.phases().size() == i) s = session_reset(s);
        if (s.phases().size() != i + 1)
            throw Error(ErrorCode::InvalidState, "replay diverged: phase " + std::to_string(i) + " was not opened");
        for (std::size_t k = 0; k < phase.clicks.size(); ++k) {
            const auto& click = phase.clicks[k];
            if (s.current_coloring() != click.coloring)
                throw Error(ErrorCode::InvalidState, "replay diverged at phase " + std::to_string(i) + " click " +
                                                         std::to_string(k) + ": coloring " +
                                                         s.current_coloring().to_string() + " vs recorded " +
                                                         click.coloring.to_string());
            s = session_click(s, click.button);
        }
        const auto& replayed = s.phases()[i].committed;
        if (replayed != phase.committed)
            throw Error(ErrorCode::InvalidState, "replay diverged: phase " + std::to_string(i) +
                                                     " committed digit does not match the record");
    }
    return s;
}

}  // namespace iftt
