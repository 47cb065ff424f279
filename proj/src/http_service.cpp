#include "ctxmem/http_service.hpp"

#include <cstdlib>

#include <httplib.h>
#include <spdlog/spdlog.h>

namespace ctxmem {

namespace {

void reply(httplib::Response& res, const CommandResponse& out)
{
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
}

}  // namespace

HttpService::HttpService(Session& session)
    : session_(session), server_(std::make_unique<httplib::Server>())
{
    auto& srv = *server_;
    srv.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

    auto get_route = [this](const char* path, const char* verb) {
        server_->Get(path, [this, verb](const httplib::Request&, httplib::Response& res) {
            reply(res, session_.handle({verb, nlohmann::json::object()}));
        });
    };
    auto post_route = [this](const char* path, const char* verb) {
        server_->Post(path, [this, verb](const httplib::Request& req, httplib::Response& res) {
            nlohmann::json payload = nlohmann::json::object();
            if (!req.body.empty()) {
                payload = nlohmann::json::parse(req.body, nullptr, false);
                if (payload.is_discarded()) {
                    reply(res, {400, {{"error", {{"code", 400}, {"message", "body is not valid JSON"}}}}});
                    return;
                }
            }
            reply(res, session_.handle({verb, std::move(payload)}));
        });
    };

    get_route("/state", "state");
    get_route("/missing", "missing");
    post_route("/teach", "teach");
    post_route("/learn", "learn");
    post_route("/visit", "visit");
    post_route("/event", "event");
    post_route("/report", "report");
    post_route("/grocery-list", "grocery-diff");
    post_route("/reset", "reset");

    srv.Options(".*", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
    srv.set_logger([](const httplib::Request& req, const httplib::Response& res) {
        spdlog::debug("{} {} -> {}", req.method, req.path, res.status);
    });
}

HttpService::~HttpService()
{
    stop();
}

int HttpService::bind(const std::string& host, int port)
{
    if (port == 0) {
        return server_->bind_to_any_port(host);
    }
    return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpService::listen_after_bind()
{
    return server_->listen_after_bind();
}

void HttpService::stop()
{
    if (server_ && server_->is_running()) {
        server_->stop();
    }
}

bool HttpService::is_running() const
{
    return server_->is_running();
}

int default_port()
{
    if (const char* env = std::getenv("CTXMEM_PORT")) {
        char* end = nullptr;
        const long port = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && port > 0 && port < 65536) {
            return static_cast<int>(port);
        }
        spdlog::warn("ignoring invalid CTXMEM_PORT '{}'", env);
    }
    return 8080;
}

}  // namespace ctxmem
