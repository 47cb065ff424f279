#include "ctxmem/session.hpp"

#include <spdlog/spdlog.h>

#include "ctxmem/errors.hpp"
#include "ctxmem/json_io.hpp"

namespace ctxmem {

namespace {

json error_body(int status, const std::string& message)
{
    return json{{"error", {{"code", status}, {"message", message}}}};
}

const json& require_object_payload(const json& payload)
{
    if (!payload.is_object()) {
        throw InvalidInputError("payload must be a JSON object");
    }
    return payload;
}

std::string required_string(const json& payload, const char* key)
{
    auto it = payload.find(key);
    if (it == payload.end() || !it->is_string()) {
        throw InvalidInputError(std::string("payload field '") + key + "' must be a string");
    }
    return it->get<std::string>();
}

}  // namespace

Session::Session(ScenarioScript script, bool pretrained)
    : script_((script.validate(), std::move(script))),
      rngs_(script_.rng_seed),
      perception_(build_perception(script_, rngs_.training)),
      network_(script_.vocabulary.size(), script_.sustain),
      env_(script_.environment),
      stcm_(script_.window_days, 1)
{
    if (pretrained) {
        teach_contexts(script_, perception_, network_, rngs_.training);
    }
}

CommandResponse Session::handle(const CommandRequest& request)
{
    std::lock_guard lock(mutex_);
    try {
        const auto& verb = request.verb;
        const auto& payload = request.payload.is_null() ? json::object() : request.payload;
        json body;
        if (verb == "teach") {
            body = do_teach(require_object_payload(payload));
        } else if (verb == "learn") {
            body = do_learn();
        } else if (verb == "visit") {
            body = do_visit(require_object_payload(payload));
        } else if (verb == "event") {
            body = do_event(require_object_payload(payload));
        } else if (verb == "report") {
            body = do_report();
        } else if (verb == "grocery-diff") {
            body = do_grocery_diff(require_object_payload(payload));
        } else if (verb == "reset") {
            body = do_reset();
        } else if (verb == "state") {
            body = state_locked();
        } else if (verb == "missing") {
            body = json{{"missingList", missing_.items}};
        } else {
            return {400, error_body(400, "unknown command verb: " + verb)};
        }
        return {200, std::move(body)};
    } catch (const NotFoundError& e) {
        return {404, error_body(404, e.what())};
    } catch (const StateError& e) {
        return {409, error_body(409, e.what())};
    } catch (const InvalidInputError& e) {
        return {400, error_body(400, e.what())};
    } catch (const DimensionError& e) {
        return {400, error_body(400, e.what())};
    } catch (const json::exception& e) {
        return {400, error_body(400, e.what())};
    } catch (const std::exception& e) {
        spdlog::error("command '{}' failed: {}", request.verb, e.what());
        return {500, error_body(500, e.what())};
    }
}

int Session::resolve_day(const json& payload) const
{
    int day = day_cursor_;
    if (auto it = payload.find("day"); it != payload.end() && !it->is_null()) {
        if (!it->is_number_integer()) {
            throw InvalidInputError("payload field 'day' must be an integer");
        }
        day = it->get<int>();
    }
    if (day < day_cursor_) {
        throw StateError("day " + std::to_string(day) + " is before the current day " +
                         std::to_string(day_cursor_));
    }
    if (!stcm_.accepts_day(day)) {
        throw StateError("day " + std::to_string(day) + " is past the current window ending on day " +
                         std::to_string(stcm_.window_end_day()) + "; request a report first");
    }
    return day;
}

std::vector<std::string> Session::sense(const std::string& context, const NoiseProfile& noise,
                                        Rng& rng)
{
    auto labels = predicted_labels(
        sense_context(env_, context, noise, perception_.model, perception_.classifier, rng));
    current_context_ = context;
    latest_detections_ = labels;
    return labels;
}

json Session::do_teach(const json& payload)
{
    const auto context = required_string(payload, "context");
    const auto& ctx = env_.context(context);
    StagedExemplar ex;
    ex.label = payload.contains("label") ? required_string(payload, "label") : context;
    ex.is_storage = payload.value("isStorage", ctx.is_storage);
    const auto noise = script_.teaching.noise_free ? NoiseProfile::none() : script_.noise;
    auto labels = sense(context, noise, rngs_.training);
    ex.lv = encode(labels, script_.vocabulary, day_cursor_, context);
    teach_buffer_.push_back(std::move(ex));
    return json{{"context", context},
                {"detections", labels},
                {"teachBufferCount", teach_buffer_.size()}};
}

json Session::do_learn()
{
    std::size_t recruited = 0;
    for (const auto& ex : teach_buffer_) {
        if (network_.learn_example(ex.lv, ex.label, ex.is_storage)) {
            ++recruited;
        }
    }
    const auto learned = teach_buffer_.size();
    teach_buffer_.clear();
    return json{{"learned", learned}, {"recruited", recruited}, {"clusters", network_.size()}};
}

json Session::do_visit(const json& payload)
{
    const auto context = required_string(payload, "context");
    const bool is_storage = env_.context(context).is_storage;
    const int day = resolve_day(payload);
    day_cursor_ = day;
    auto labels = sense(context, script_.noise, rngs_.perception);
    auto lv = encode(labels, script_.vocabulary, day, context);
    if (is_storage) {
        auto seen = decode(lv.values, 0.0, script_.vocabulary);
        storage_observed_.insert(seen.begin(), seen.end());
    } else {
        stcm_.store(std::move(lv));
    }
    return json{{"day", day},
                {"context", context},
                {"detections", labels},
                {"routedTo", is_storage ? "storage" : "stcm"}};
}

json Session::do_event(const json& payload)
{
    auto event = event_from_json(payload);
    event.day = resolve_day(payload);
    env_.apply(event);
    day_cursor_ = event.day;
    return json{{"applied", event}};
}

json Session::do_report()
{
    const int end_day = stcm_.window_end_day();
    const auto window = stcm_.entries();
    if (!window.empty() && network_.non_storage_count() == 0) {
        throw StateError("long-term memory has no learned contexts; teach and learn first");
    }
    auto drained = stcm_.drain_window();
    auto report = evaluate_window(drained, storage_observed_, end_day, network_,
                                  script_.vocabulary, missing_, script_.reasoner);
    storage_observed_.clear();
    last_storage_items_ = report.storage_items;
    last_report_ = report;
    day_cursor_ = stcm_.window_start_day();
    return json(report);
}

json Session::do_grocery_diff(const json& payload)
{
    auto it = payload.find("items");
    if (it == payload.end()) {
        throw InvalidInputError("payload field 'items' is required");
    }
    const auto user = label_set_from_json(*it);
    return json{{"userList", user},
                {"missingList", missing_.items},
                {"suggested", diff_with_user_list(missing_, user)}};
}

json Session::do_reset()
{
    missing_ = reset_list(missing_);
    return json{{"missingList", missing_.items}};
}

json Session::state() const
{
    std::lock_guard lock(mutex_);
    return state_locked();
}

json Session::state_locked() const
{
    json clusters = json::array();
    for (const auto& c : network_.clusters()) {
        clusters.push_back(json{{"label", c.label}, {"isStorage", c.is_storage}});
    }
    return json{{"dayCursor", day_cursor_},
                {"windowStartDay", stcm_.window_start_day()},
                {"windowDays", stcm_.window_days()},
                {"currentContext", current_context_ ? json(*current_context_) : json(nullptr)},
                {"latestDetections", latest_detections_},
                {"missingList", missing_.items},
                {"storageItems", last_storage_items_},
                {"teachBufferCount", teach_buffer_.size()},
                {"stcmEntries", stcm_.size()},
                {"vocabulary", script_.vocabulary},
                {"clusters", std::move(clusters)},
                {"environment", env_},
                {"lastReport", last_report_ ? json(*last_report_) : json(nullptr)}};
}

StateSnapshot Session::snapshot() const
{
    std::lock_guard lock(mutex_);
    return StateSnapshot{kSnapshotFormatVersion, script_.vocabulary, network_, stcm_, missing_,
                         day_cursor_, rng_state_to_string(rngs_.perception)};
}

void Session::restore(const StateSnapshot& snapshot)
{
    validate_snapshot(snapshot);
    std::lock_guard lock(mutex_);
    if (!(snapshot.vocabulary == script_.vocabulary)) {
        throw SnapshotConsistencyError("snapshot vocabulary differs from the session's");
    }
    network_ = snapshot.network;
    stcm_ = snapshot.stcm;
    missing_ = snapshot.missing_list;
    day_cursor_ = snapshot.day_cursor;
    rngs_.perception = rng_from_state(snapshot.rng_state);
    storage_observed_.clear();
    teach_buffer_.clear();
}

}  // namespace ctxmem
