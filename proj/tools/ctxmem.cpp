// ctxmem: run scripted household scenarios, serve a live session over HTTP,
// and inspect saved state.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/cfg/env.h>
#include <spdlog/spdlog.h>

#include "ctxmem/http_service.hpp"
#include "ctxmem/json_io.hpp"
#include "ctxmem/persistence.hpp"
#include "ctxmem/scenario.hpp"
#include "ctxmem/session.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitScenario = 2;

ctxmem::HttpService* g_service = nullptr;

void on_signal(int)
{
    if (g_service != nullptr) {
        g_service->stop();
    }
}

std::string join(const ctxmem::LabelSet& labels)
{
    std::ostringstream out;
    bool first = true;
    for (const auto& l : labels) {
        out << (first ? "" : ", ") << l;
        first = false;
    }
    return out.str();
}

ctxmem::LabelSet split_list(const std::string& text)
{
    ctxmem::LabelSet out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) {
            out.insert(item.substr(b, e - b + 1));
        }
    }
    return out;
}

struct RunOptions {
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string save_state;
    bool quiet = false;
};

int cmd_run(const RunOptions& opt)
{
    auto script = ctxmem::load_scenario_file(opt.scenario);
    if (opt.seed) {
        script.rng_seed = *opt.seed;
    }
    ctxmem::RngStreams rngs(script.rng_seed);
    const auto setup = ctxmem::prepare_scenario(script, rngs.training);
    const auto result = ctxmem::run_scenario_detailed(script, setup, rngs);

    if (!opt.quiet) {
        std::cout << "day  missing list                          storage items\n";
        for (const auto& r : result.reports) {
            std::string list = join(r.missing_list);
            std::cout << std::string(r.window_end_day < 10 ? " " : "") << r.window_end_day << "   "
                      << list << std::string(list.size() < 38 ? 38 - list.size() : 1, ' ')
                      << join(r.storage_items) << "\n";
        }
    }
    if (!opt.out.empty()) {
        std::ofstream out(opt.out);
        if (!out) {
            throw ctxmem::SnapshotIoError("cannot write " + opt.out);
        }
        out << ctxmem::reports_to_json(result.reports).dump(2) << "\n";
    }
    if (!opt.save_state.empty()) {
        ctxmem::save_state({ctxmem::kSnapshotFormatVersion, script.vocabulary, setup.network,
                            result.stcm, result.missing, result.next_day,
                            ctxmem::rng_state_to_string(rngs.perception)},
                           opt.save_state);
    }
    return kExitOk;
}

struct ServeOptions {
    std::string host = "127.0.0.1";
    int port = 0;
    std::string scenario;
    std::string state;
    bool untrained = false;
};

int cmd_serve(const ServeOptions& opt)
{
    auto script = opt.scenario.empty() ? ctxmem::default_household_script()
                                       : ctxmem::load_scenario_file(opt.scenario);
    ctxmem::Session session(std::move(script), !opt.untrained);
    if (!opt.state.empty()) {
        session.restore(ctxmem::load_state(opt.state));
    }
    ctxmem::HttpService service(session);
    const int port = service.bind(opt.host, opt.port != 0 ? opt.port : ctxmem::default_port());
    if (port < 0) {
        spdlog::error("cannot bind {}:{}", opt.host, opt.port);
        return kExitUsage;
    }
    g_service = &service;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    spdlog::info("serving on http://{}:{}", opt.host, port);
    service.listen_after_bind();
    g_service = nullptr;
    return kExitOk;
}

int cmd_diff(const std::string& list, const std::string& state, const std::string& missing)
{
    ctxmem::MissingList m;
    if (!state.empty()) {
        m = ctxmem::load_state(state).missing_list;
    } else {
        m.items = split_list(missing);
    }
    const auto suggested = ctxmem::diff_with_user_list(m, split_list(list));
    std::cout << nlohmann::json(suggested).dump() << "\n";
    return kExitOk;
}

int cmd_inspect(const std::string& path)
{
    const auto s = ctxmem::load_state(path);
    std::cout << "format version : " << s.format_version << "\n"
              << "vocabulary     : " << s.vocabulary.size() << " categories\n"
              << "clusters       : " << s.network.size() << " (" << s.network.non_storage_count()
              << " regular)\n";
    for (const auto& c : s.network.clusters()) {
        std::cout << "  - " << c.label << (c.is_storage ? " [storage]" : "") << "\n";
    }
    std::cout << "day cursor     : " << s.day_cursor << "\n"
              << "stcm window    : days " << s.stcm.window_start_day() << "-"
              << s.stcm.window_end_day() << ", " << s.stcm.size() << " entries\n"
              << "missing list   : " << join(s.missing_list.items) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    spdlog::cfg::load_env_levels();
    CLI::App app{"Contextual memory engine and household simulator"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Replay a scenario file and print the missing-item reports");
    run->add_option("scenario", run_opt.scenario, "Scenario JSON file")->required();
    run->add_option("--seed", run_opt.seed, "Override the scenario's rngSeed");
    run->add_option("--out", run_opt.out, "Write the report sequence as JSON");
    run->add_option("--save-state", run_opt.save_state, "Write the final state snapshot");
    run->add_flag("--quiet", run_opt.quiet, "Do not print the report table");

    ServeOptions serve_opt;
    auto* serve = app.add_subcommand("serve", "Expose a live session over HTTP/JSON");
    serve->add_option("--port", serve_opt.port, "Port (default $CTXMEM_PORT or 8080)");
    serve->add_option("--host", serve_opt.host, "Bind address");
    serve->add_option("--scenario", serve_opt.scenario, "Household definition (default: built-in)");
    serve->add_option("--state", serve_opt.state, "Resume from a saved snapshot");
    serve->add_flag("--untrained", serve_opt.untrained, "Start with an empty long-term memory");

    std::string diff_list, diff_state, diff_missing;
    auto* diff = app.add_subcommand("diff", "Items of a missing list that are not on a user list");
    diff->add_option("--list", diff_list, "Comma-separated user grocery list")->required();
    auto* diff_src = diff->add_option_group("source");
    diff_src->add_option("--state", diff_state, "Take the missing list from a snapshot");
    diff_src->add_option("--missing", diff_missing, "Comma-separated missing list");
    diff_src->require_option(1);

    std::string inspect_path;
    auto* inspect = app.add_subcommand("inspect", "Summarize a saved state snapshot");
    inspect->add_option("state", inspect_path, "Snapshot JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) return cmd_run(run_opt);
        if (*serve) return cmd_serve(serve_opt);
        if (*diff) return cmd_diff(diff_list, diff_state, diff_missing);
        if (*inspect) return cmd_inspect(inspect_path);
    } catch (const ctxmem::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitScenario;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitScenario;
    }
    return kExitUsage;
}
