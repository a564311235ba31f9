#pragma once

// Newline-delimited JSON protocol that lets a browser front end drive one
// session per connection. Every message is an object with a "type" field.
//
//   client: configure | click | reset | export
//   server: hello | state | committed | complete | error | transcript

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "iftt_pin/session.hpp"

namespace iftt {

inline constexpr int kProtocolVersion = 1;

nlohmann::ordered_json hello_message();
nlohmann::ordered_json view_to_json(const ViewState& view);

/// Protocol state for one connection.
class BridgeSlot {
public:
    // Fields a configure message leaves out are taken from `defaults`.
    explicit BridgeSlot(SessionConfig defaults) : defaults_(defaults) {}

    std::vector<nlohmann::ordered_json> handle_message(const nlohmann::json& message);

    // Parses one line; malformed JSON yields error("bad-message").
    std::vector<std::string> handle_line(const std::string& line);

    const std::optional<PinSession>& session() const { return session_; }

private:
    std::vector<nlohmann::ordered_json> configure(const nlohmann::json& message);
    std::vector<nlohmann::ordered_json> click(const nlohmann::json& message);

    SessionConfig defaults_;
    std::optional<PinSession> session_;
};

class BindError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// TCP server on 127.0.0.1; each accepted connection gets its own thread
/// and BridgeSlot.
class BridgeServer {
public:
    explicit BridgeServer(SessionConfig defaults) : defaults_(defaults) {}
    ~BridgeServer();

    BridgeServer(const BridgeServer&) = delete;
    BridgeServer& operator=(const BridgeServer&) = delete;

    // Port 0 picks a free port. Throws BindError.
    void bind(std::uint16_t port);
    std::uint16_t port() const { return port_; }

    // Blocks until stop().
    void serve();
    void stop();

private:
    void handle_connection(int fd);

    SessionConfig defaults_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::atomic<bool> stopping_{false};
    std::mutex mutex_;
    std::vector<int> client_fds_;
    std::vector<std::jthread> workers_;
};

}  // namespace iftt
