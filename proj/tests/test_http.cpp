#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <thread>

#include <httplib.h>

#include "ctxmem/http_service.hpp"

using namespace ctxmem;
using nlohmann::json;

namespace {

struct LiveServer {
    Session session;
    HttpService service;
    std::thread thread;
    int port = -1;

    explicit LiveServer(ScenarioScript script, bool pretrained = true)
        : session(std::move(script), pretrained), service(session)
    {
        port = service.bind("127.0.0.1", 0);
        REQUIRE(port > 0);
        thread = std::thread([this] { service.listen_after_bind(); });
        while (!service.is_running()) std::this_thread::yield();
    }
    ~LiveServer()
    {
        service.stop();
        thread.join();
    }
};

ScenarioScript quiet_household()
{
    auto s = default_household_script();
    s.noise = NoiseProfile::none();
    return s;
}

json post(httplib::Client& c, const char* path, const json& body, int expect = 200)
{
    auto res = c.Post(path, body.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == expect);
    return json::parse(res->body);
}

json get(httplib::Client& c, const char* path)
{
    auto res = c.Get(path);
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->get_header_value("Content-Type") == "application/json");
    return json::parse(res->body);
}

}  // namespace

TEST_CASE("storage workflow over HTTP")
{
    LiveServer srv(quiet_household());
    httplib::Client c("127.0.0.1", srv.port);

    post(c, "/event", {{"action", "remove"}, {"instance", "milk#1"}});
    post(c, "/event", {{"action", "remove"}, {"instance", "cereal#1"}});
    for (int day = 1; day <= 2; ++day) {
        for (const char* ctx : {"kitchen", "home_office", "dining_area"}) {
            auto v = post(c, "/visit", {{"context", ctx}, {"day", day}});
            CHECK(v.at("routedTo") == "stcm");
        }
    }
    post(c, "/visit", {{"context", "storage_space"}});
    auto report = post(c, "/report", json::object());
    CHECK(report.at("predicted") == json({"milk"}));
    CHECK(report.at("storageItems") == json({"cereal"}));

    CHECK(get(c, "/missing").at("missingList") == json({"milk"}));
    auto state = get(c, "/state");
    CHECK(state.at("storageItems") == json({"cereal"}));
    CHECK(state.at("missingList") == json({"milk"}));

    auto diff = post(c, "/grocery-list", {{"items", {"banana", "mouse"}}});
    CHECK(diff.at("suggested") == json({"milk"}));

    post(c, "/reset", json::object());
    CHECK(get(c, "/missing").at("missingList").empty());
}

TEST_CASE("teach and learn over HTTP")
{
    LiveServer srv(quiet_household(), false);
    httplib::Client c("127.0.0.1", srv.port);
    for (int i = 0; i < 3; ++i) post(c, "/teach", {{"context", "kitchen"}});
    CHECK(get(c, "/state").at("teachBufferCount") == 3);
    auto learned = post(c, "/learn", json::object());
    CHECK(learned.at("clusters") == 1);
    CHECK(get(c, "/state").at("clusters")[0].at("label") == "kitchen");
}

TEST_CASE("HTTP errors carry a JSON error object")
{
    LiveServer srv(quiet_household());
    httplib::Client c("127.0.0.1", srv.port);

    auto bad_json = c.Post("/visit", "{nope", "application/json");
    REQUIRE(bad_json);
    CHECK(bad_json->status == 400);
    CHECK(json::parse(bad_json->body).at("error").at("code") == 400);

    auto missing_ctx = post(c, "/visit", {{"context", "attic"}}, 404);
    CHECK(missing_ctx.at("error").at("message").get<std::string>().find("attic") != std::string::npos);

    post(c, "/visit", {{"context", "kitchen"}, {"day", 9}}, 409);

    auto unknown = c.Get("/nowhere");
    REQUIRE(unknown);
    CHECK(unknown->status == 404);
}

TEST_CASE("default port honours CTXMEM_PORT")
{
    ::setenv("CTXMEM_PORT", "9123", 1);
    CHECK(default_port() == 9123);
    ::setenv("CTXMEM_PORT", "not-a-port", 1);
    CHECK(default_port() == 8080);
    ::unsetenv("CTXMEM_PORT");
    CHECK(default_port() == 8080);
}
