#include "ctxmem/environment.hpp"

#include "ctxmem/errors.hpp"

namespace ctxmem {

void Environment::add_context(const std::string& name, bool is_storage)
{
    if (name.empty()) {
        throw InvalidInputError("context name must be non-empty");
    }
    if (!contexts_.emplace(name, ContextState{is_storage, {}}).second) {
        throw InvalidInputError("duplicate context: " + name);
    }
}

void Environment::place(const std::string& context, const std::string& instance_id,
                        const std::string& category)
{
    if (instance_id.empty() || category.empty()) {
        throw InvalidInputError("item instance id and category must be non-empty");
    }
    auto& ctx = mutable_context(context);
    if (catalog_.count(instance_id) != 0) {
        throw InvalidInputError("duplicate item instance: " + instance_id);
    }
    catalog_.emplace(instance_id, category);
    ctx.items.emplace(instance_id, category);
}

const ContextState& Environment::context(const std::string& name) const
{
    auto it = contexts_.find(name);
    if (it == contexts_.end()) {
        throw NotFoundError("unknown context: " + name);
    }
    return it->second;
}

ContextState& Environment::mutable_context(const std::string& name)
{
    auto it = contexts_.find(name);
    if (it == contexts_.end()) {
        throw NotFoundError("unknown context: " + name);
    }
    return it->second;
}

std::optional<std::string> Environment::location_of(const std::string& instance_id) const
{
    for (const auto& [name, ctx] : contexts_) {
        if (ctx.items.count(instance_id) != 0) {
            return name;
        }
    }
    return std::nullopt;
}

void Environment::apply(const ScenarioEvent& event)
{
    auto cat = catalog_.find(event.instance_id);
    if (cat == catalog_.end()) {
        throw NotFoundError("unknown item instance: " + event.instance_id);
    }
    const auto current = location_of(event.instance_id);

    switch (event.action) {
    case EventAction::remove:
        if (!current) {
            throw StateError("cannot remove " + event.instance_id + ": already removed");
        }
        mutable_context(*current).items.erase(event.instance_id);
        break;
    case EventAction::move:
    case EventAction::replace: {
        if (!event.target_context) {
            throw InvalidInputError(std::string(to_string(event.action)) +
                                    " event requires a target context");
        }
        auto& target = mutable_context(*event.target_context);
        if (event.action == EventAction::move && !current) {
            throw StateError("cannot move " + event.instance_id + ": it has been removed");
        }
        if (event.action == EventAction::replace && current) {
            throw StateError("cannot replace " + event.instance_id + ": it is present in " +
                             *current);
        }
        if (current) {
            mutable_context(*current).items.erase(event.instance_id);
        }
        target.items.emplace(event.instance_id, cat->second);
        break;
    }
    }
}

std::vector<std::string> Environment::regular_contexts() const
{
    std::vector<std::string> out;
    for (const auto& [name, ctx] : contexts_) {
        if (!ctx.is_storage) {
            out.push_back(name);
        }
    }
    return out;
}

std::vector<std::string> Environment::storage_contexts() const
{
    std::vector<std::string> out;
    for (const auto& [name, ctx] : contexts_) {
        if (ctx.is_storage) {
            out.push_back(name);
        }
    }
    return out;
}

Environment apply_event(Environment env, const ScenarioEvent& event)
{
    env.apply(event);
    return env;
}

const char* to_string(EventAction action)
{
    switch (action) {
    case EventAction::remove: return "remove";
    case EventAction::move: return "move";
    case EventAction::replace: return "replace";
    }
    return "?";
}

EventAction event_action_from_string(const std::string& text)
{
    if (text == "remove") return EventAction::remove;
    if (text == "move") return EventAction::move;
    if (text == "replace") return EventAction::replace;
    throw InvalidInputError("unknown event action: " + text);
}

}  // namespace ctxmem
