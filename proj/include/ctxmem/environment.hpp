#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ctxmem {

struct ContextState {
    bool is_storage = false;
    /// instance id -> category
    std::map<std::string, std::string> items;

    bool operator==(const ContextState&) const = default;
};

enum class EventAction { remove, move, replace };

struct ScenarioEvent {
    int day = 1;
    EventAction action = EventAction::remove;
    std::string instance_id;
    std::optional<std::string> target_context;

    bool operator==(const ScenarioEvent&) const = default;
};

/// Simulated household: named contexts holding uniquely identified item
/// instances. Every instance ever placed stays in the catalog so that a
/// removed item can later be replaced.
class Environment {
public:
    void add_context(const std::string& name, bool is_storage = false);
    void place(const std::string& context, const std::string& instance_id,
               const std::string& category);

    void apply(const ScenarioEvent& event);

    bool has_context(const std::string& name) const { return contexts_.count(name) != 0; }
    const ContextState& context(const std::string& name) const;
    const std::map<std::string, ContextState>& contexts() const { return contexts_; }

    /// Context currently holding the instance, or nullopt if removed.
    std::optional<std::string> location_of(const std::string& instance_id) const;
    const std::map<std::string, std::string>& catalog() const { return catalog_; }

    std::vector<std::string> regular_contexts() const;
    std::vector<std::string> storage_contexts() const;

    bool operator==(const Environment&) const = default;

private:
    ContextState& mutable_context(const std::string& name);

    std::map<std::string, ContextState> contexts_;
    std::map<std::string, std::string> catalog_;
};

/// Applies one event to a copy of `env`.
Environment apply_event(Environment env, const ScenarioEvent& event);

const char* to_string(EventAction action);
EventAction event_action_from_string(const std::string& text);

}  // namespace ctxmem
