#pragma once

#include <memory>
#include <string>

#include "ctxmem/session.hpp"

namespace httplib {
class Server;
}

namespace ctxmem {

/// JSON-over-HTTP front end for one Session.
///
///   GET  /state          full observable state
///   GET  /missing        {"missingList": [...]}
///   POST /teach          {"context", "label"?, "isStorage"?}
///   POST /learn          {}
///   POST /visit          {"context", "day"?}
///   POST /event          {"action", "instance", "target"?, "day"?}
///   POST /report         {}
///   POST /grocery-list   {"items": [...]}
///   POST /reset          {}
///
/// Errors come back as {"error": {"code", "message"}} with the same status.
class HttpService {
public:
    explicit HttpService(Session& session);
    ~HttpService();

    HttpService(const HttpService&) = delete;
    HttpService& operator=(const HttpService&) = delete;

    /// Binds `port` (0 picks a free one) and returns the bound port, or -1.
    int bind(const std::string& host, int port);
    /// Blocks until stop() is called.
    bool listen_after_bind();
    void stop();
    bool is_running() const;

private:
    Session& session_;
    std::unique_ptr<httplib::Server> server_;
};

/// Default port, overridable through CTXMEM_PORT.
int default_port();

}  // namespace ctxmem
