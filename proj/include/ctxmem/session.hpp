#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxmem/environment.hpp"
#include "ctxmem/persistence.hpp"
#include "ctxmem/reasoner.hpp"
#include "ctxmem/scenario.hpp"
#include "ctxmem/stcm.hpp"
#include "ctxmem/sustain.hpp"

namespace ctxmem {

struct CommandRequest {
    /// teach | learn | visit | event | report | grocery-diff | reset | state | missing
    std::string verb;
    nlohmann::json payload = nlohmann::json::object();
};

struct CommandResponse {
    int status = 200;
    nlohmann::json body;

    bool ok() const { return status < 300; }
};

/// One live simulation: household, perception, both memories and the
/// missing list, driven one command at a time. All public members lock a
/// single mutex, so concurrent callers observe sequential semantics.
class Session {
public:
    /// With `pretrained`, every context of the script's environment is taught
    /// up front exactly as run_scenario() does.
    explicit Session(ScenarioScript script, bool pretrained = false);

    CommandResponse handle(const CommandRequest& request);

    nlohmann::json state() const;
    StateSnapshot snapshot() const;
    /// Replaces memories, missing list, day cursor and perception stream.
    /// The snapshot vocabulary must match the session's.
    void restore(const StateSnapshot& snapshot);

private:
    struct StagedExemplar {
        LatentVariable lv;
        std::string label;
        bool is_storage = false;
    };

    nlohmann::json do_teach(const nlohmann::json& payload);
    nlohmann::json do_learn();
    nlohmann::json do_visit(const nlohmann::json& payload);
    nlohmann::json do_event(const nlohmann::json& payload);
    nlohmann::json do_report();
    nlohmann::json do_grocery_diff(const nlohmann::json& payload);
    nlohmann::json do_reset();
    nlohmann::json state_locked() const;

    int resolve_day(const nlohmann::json& payload) const;
    std::vector<std::string> sense(const std::string& context, const NoiseProfile& noise, Rng& rng);

    mutable std::mutex mutex_;
    ScenarioScript script_;
    RngStreams rngs_;
    PerceptionStack perception_;
    SustainNetwork network_;
    Environment env_;
    StcmBuffer stcm_;
    MissingList missing_;
    LabelSet storage_observed_;
    LabelSet last_storage_items_;
    std::optional<MissingReport> last_report_;
    std::vector<StagedExemplar> teach_buffer_;
    int day_cursor_ = 1;
    std::optional<std::string> current_context_;
    std::vector<std::string> latest_detections_;
};

}  // namespace ctxmem
