#include "iftt_pin/bridge.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <algorithm>
#include <cstring>

#include "iftt_pin/transcript.hpp"

namespace iftt {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json error_message(const char* code, const std::string& text)
{
    return ordered_json{{"type", "error"}, {"code", code}, {"text", text}};
}

char dot_char(const EvidenceSet& e)
{
    if (e.contradictory()) return 'X';
    if (e.yellow) return 'Y';
    if (e.grey) return 'G';
    return '.';
}

ordered_json state_message(const PinSession& s)
{
    return ordered_json{{"type", "state"}, {"state", view_to_json(current_view(s))}};
}

}  // namespace

ordered_json hello_message() { return ordered_json{{"type", "hello"}, {"version", kProtocolVersion}}; }

ordered_json view_to_json(const ViewState& view)
{
    ordered_json j;
    j["committed"] = view.committed;
    j["pin_length"] = view.pin_length;
    j["digits"] = view.digit_colors.to_string();
    std::string buttons;
    for (const auto& b : view.buttons) buttons += b ? to_char(*b) : '-';
    j["buttons"] = buttons;
    j["dashboard"] = ordered_json::array();
    for (const auto& row : view.dashboard) {
        std::string dots;
        for (const auto& e : row.dots) dots += dot_char(e);
        j["dashboard"].push_back(
            ordered_json{{"digit", row.digit.value()}, {"consistent", row.consistent}, {"dots", dots}});
    }
    j["status"] = std::string(to_string(view.status));
    j["phase_clicks"] = view.phase_clicks;
    return j;
}

std::vector<ordered_json> BridgeSlot::configure(const json& m)
{
    SessionConfig cfg = defaults_;
    bool buttons_given = false;
    try {
        if (m.contains("mode")) cfg.mode = mode_from_string(m.at("mode").get<std::string>());
        if (m.contains("n_buttons")) {
            cfg.n_buttons = m.at("n_buttons").get<int>();
            buttons_given = true;
        }
        if (m.contains("pin_length")) cfg.pin_length = m.at("pin_length").get<int>();
        if (m.contains("seed")) cfg.seed = m.at("seed").get<std::uint64_t>();
        if (m.contains("policy")) cfg.policy = policy_from_string(m.at("policy").get<std::string>());
        if (m.contains("carryover")) cfg.carryover = m.at("carryover").get<bool>();
        if (m.contains("click_cap")) cfg.click_cap = m.at("click_cap").get<int>();
        if (cfg.mode == Mode::Classic && !buttons_given) cfg.n_buttons = 2;
        session_ = start_session(cfg);
    } catch (const json::exception& e) {
        return {error_message("bad-config", e.what())};
    } catch (const Error& e) {
        return {error_message("bad-config", e.what())};
    }
    return {state_message(*session_)};
}

std::vector<ordered_json> BridgeSlot::click(const json& m)
{
    if (!session_) return {error_message("not-configured", "send configure before click")};
    auto it = m.find("button");
    if (it == m.end() || !it->is_number_integer())
        return {error_message("bad-message", "click needs an integer 'button'")};
    const auto button = it->get<std::int64_t>();
    const auto& s = *session_;
    if (s.status() == SessionStatus::Complete) return {error_message("finished", "the PIN is already complete")};
    if (button < 0 || button >= s.config().n_buttons)
        return {error_message("bad-button", "button " + std::to_string(button) + " outside 0.." +
                                                std::to_string(s.config().n_buttons - 1))};
    if (s.status() != SessionStatus::InProgress)
        return {error_message("needs-reset", "phase ended " + std::string(to_string(s.status())) + ", send reset")};

    const auto before = s.committed_digits().size();
    session_ = session_click(s, ButtonId{static_cast<int>(button)});
    std::vector<ordered_json> out{state_message(*session_)};
    if (session_->committed_digits().size() > before)
        out.push_back(ordered_json{{"type", "committed"}, {"index", before}});
    if (session_->status() == SessionStatus::Complete) {
        std::string pin;
        for (Digit d : session_->committed_digits()) pin += static_cast<char>('0' + d.value());
        out.push_back(ordered_json{{"type", "complete"}, {"pin", pin}, {"mapping", session_->learned_mapping().to_string()}});
    }
    return out;
}

std::vector<ordered_json> BridgeSlot::handle_message(const json& m)
{
    if (!m.is_object() || !m.contains("type") || !m.at("type").is_string())
        return {error_message("bad-message", "message must be an object with a string 'type'")};
    const auto type = m.at("type").get<std::string>();
    if (type == "configure") return configure(m);
    if (type == "click") return click(m);
    if (type == "reset") {
        if (!session_) return {error_message("not-configured", "send configure before reset")};
        if (session_->status() == SessionStatus::Complete)
            return {error_message("finished", "the PIN is already complete")};
        session_ = session_reset(*session_);
        return {state_message(*session_)};
    }
    if (type == "export") {
        if (!session_) return {error_message("not-configured", "send configure before export")};
        return {ordered_json{{"type", "transcript"},
                             {"document", ordered_json::parse(serialize_transcript(export_transcript(*session_)))}}};
    }
    return {error_message("bad-message", "unknown message type '" + type + "'")};
}

std::vector<std::string> BridgeSlot::handle_line(const std::string& line)
{
    std::vector<ordered_json> replies;
    try {
        replies = handle_message(json::parse(line));
    } catch (const json::parse_error& e) {
        replies = {error_message("bad-message", e.what())};
    }
    std::vector<std::string> out;
    for (const auto& r : replies) out.push_back(r.dump());
    return out;
}

BridgeServer::~BridgeServer()
{
    stop();
    workers_.clear();
}

void BridgeServer::bind(std::uint16_t port)
{
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw BindError(std::string("socket: ") + std::strerror(errno));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 || ::listen(listen_fd_, 16) != 0) {
        const std::string why = std::strerror(errno);
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw BindError("cannot listen on port " + std::to_string(port) + ": " + why);
    }
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

void BridgeServer::serve()
{
    const int listen_fd = listen_fd_;
    while (!stopping_) {
        int fd = ::accept(listen_fd, nullptr, nullptr);
        if (fd < 0) {
            if (errno == EINTR) continue;
            break;
        }
        std::lock_guard lock(mutex_);
        if (stopping_) {
            ::close(fd);
            break;
        }
        client_fds_.push_back(fd);
        workers_.emplace_back([this, fd] { handle_connection(fd); });
    }
}

void BridgeServer::stop()
{
    if (stopping_.exchange(true)) return;
    std::lock_guard lock(mutex_);
    if (listen_fd_ >= 0) {
        ::shutdown(listen_fd_, SHUT_RDWR);
        ::close(listen_fd_);
        listen_fd_ = -1;
    }
    for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
}

namespace {

bool send_all(int fd, const std::string& data)
{
    std::size_t sent = 0;
    while (sent < data.size()) {
        auto n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (n <= 0) return false;
        sent += static_cast<std::size_t>(n);
    }
    return true;
}

}  // namespace

void BridgeServer::handle_connection(int fd)
{
    BridgeSlot slot(defaults_);
    std::string buffer;
    char chunk[4096];
    bool open = send_all(fd, hello_message().dump() + "\n");
    while (open) {
        auto n = ::recv(fd, chunk, sizeof chunk, 0);
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));
        std::size_t pos;
        while (open && (pos = buffer.find('\n')) != std::string::npos) {
            std::string line = buffer.substr(0, pos);
            buffer.erase(0, pos + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            for (const auto& reply : slot.handle_line(line)) open = open && send_all(fd, reply + "\n");
        }
    }
    std::lock_guard lock(mutex_);
    std::erase(client_fds_, fd);
    ::close(fd);
}

}  // namespace iftt
