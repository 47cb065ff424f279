#include "ctxmem/scenario.hpp"

#include <algorithm>

#include <fmt/ranges.h>
#include <spdlog/spdlog.h>

#include "ctxmem/errors.hpp"

namespace ctxmem {

namespace {

constexpr std::uint64_t kPerceptionSalt = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kTrainingSalt = 0xc2b2ae3d27d4eb4fULL;

Rng derive(std::uint64_t seed, std::uint64_t salt)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
    return Rng(seq);
}

void check_context_list(const ScenarioScript& s, const std::vector<std::string>& plan,
                        const std::string& where)
{
    for (const auto& ctx : plan) {
        if (!s.environment.has_context(ctx)) {
            throw InvalidInputError(where + " names unknown context " + ctx);
        }
    }
}

}  // namespace

RngStreams::RngStreams(std::uint64_t seed)
    : schedule(derive(seed, 0)), perception(derive(seed, kPerceptionSalt)),
      training(derive(seed, kTrainingSalt))
{
}

void ScenarioScript::validate() const
{
    if (duration_days < 1) throw InvalidInputError("durationDays must be at least 1");
    if (visits_per_day < 1) throw InvalidInputError("visitsPerDay must be at least 1");
    if (window_days < 1) throw InvalidInputError("windowDays must be at least 1");
    if (vocabulary.empty()) throw InvalidInputError("scenario has an empty vocabulary");
    noise.validate();
    sustain.validate();
    if (perception.feature_dim == 0 || !(perception.sigma > 0.0) ||
        perception.training_samples_per_class == 0) {
        throw InvalidInputError("perception settings must be positive");
    }
    if (teaching.exemplars_per_context == 0) {
        throw InvalidInputError("teaching needs at least one exemplar per context");
    }
    if (environment.regular_contexts().empty()) {
        throw InvalidInputError("scenario needs at least one non-storage context");
    }
    for (const auto& [id, category] : environment.catalog()) {
        if (!vocabulary.contains(category)) {
            throw InvalidInputError("item " + id + " has category " + category +
                                    " outside the vocabulary");
        }
    }
    int last_day = 1;
    for (const auto& e : events) {
        if (e.day < 1 || e.day > duration_days) {
            throw InvalidInputError("event day " + std::to_string(e.day) + " out of range");
        }
        if (e.day < last_day) throw InvalidInputError("events must be sorted by day");
        last_day = e.day;
        if (e.action != EventAction::remove && !e.target_context) {
            throw InvalidInputError("move/replace event for " + e.instance_id + " lacks a target");
        }
        if (e.action == EventAction::remove && e.target_context) {
            throw InvalidInputError("remove event for " + e.instance_id + " carries a target");
        }
        if (e.target_context && !environment.has_context(*e.target_context)) {
            throw InvalidInputError("event targets unknown context " + *e.target_context);
        }
        if (environment.catalog().count(e.instance_id) == 0) {
            throw InvalidInputError("event names unknown instance " + e.instance_id);
        }
    }
    for (const auto& [day, plan] : visit_plan) {
        check_context_list(*this, plan, "visit plan for day " + std::to_string(day));
    }
    if (default_visit_plan) check_context_list(*this, *default_visit_plan, "default visit plan");
}

PerceptionStack build_perception(const ScenarioScript& script, Rng& training_rng)
{
    auto model = SyntheticFeatureModel::make(script.vocabulary, script.perception.feature_dim,
                                             script.perception.sigma, script.perception.separation,
                                             script.rng_seed);
    const auto samples =
        draw_training_set(model, script.perception.training_samples_per_class, training_rng);
    auto classifier = train_ncm(samples, script.vocabulary);
    return PerceptionStack{std::move(model), std::move(classifier)};
}

void teach_contexts(const ScenarioScript& script, const PerceptionStack& perception,
                    SustainNetwork& net, Rng& training_rng)
{
    const auto noise = script.teaching.noise_free ? NoiseProfile::none() : script.noise;
    for (std::size_t n = 0; n < script.teaching.exemplars_per_context; ++n) {
        for (const auto& [name, ctx] : script.environment.contexts()) {
            auto labels = predicted_labels(sense_context(script.environment, name, noise,
                                                         perception.model, perception.classifier,
                                                         training_rng));
            net.learn_example(encode(labels, script.vocabulary, 0, name), name, ctx.is_storage);
        }
    }
}

ScenarioSetup prepare_scenario(const ScenarioScript& script, Rng& training_rng)
{
    auto perception = build_perception(script, training_rng);
    SustainNetwork net(script.vocabulary.size(), script.sustain);
    teach_contexts(script, perception, net, training_rng);
    return ScenarioSetup{std::move(perception.model), std::move(perception.classifier),
                         std::move(net)};
}

std::vector<std::string> schedule_day(const ScenarioScript& script, int day, Rng& rng)
{
    if (day < 1 || day > script.duration_days) {
        throw InvalidInputError("day " + std::to_string(day) + " outside the scenario");
    }
    if (auto it = script.visit_plan.find(day); it != script.visit_plan.end()) {
        return it->second;
    }
    if (script.default_visit_plan) {
        return *script.default_visit_plan;
    }
    const auto pool = script.environment.regular_contexts();
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(script.visits_per_day));
    for (int v = 0; v < script.visits_per_day; ++v) {
        out.push_back(pool[pick(rng)]);
    }
    return out;
}

ScenarioResult run_scenario_detailed(const ScenarioScript& script, const ScenarioSetup& setup,
                                     RngStreams& rngs)
{
    script.validate();
    const auto& vocab = script.vocabulary;
    Environment env = script.environment;
    StcmBuffer stcm(script.window_days, 1);
    MissingList missing;
    LabelSet storage_observed;
    std::vector<MissingReport> reports;

    auto sense = [&](const std::string& ctx, int day) {
        auto labels = predicted_labels(sense_context(env, ctx, script.noise, setup.model,
                                                     setup.classifier, rngs.perception));
        return encode(labels, vocab, day, ctx);
    };
    auto close_window = [&] {
        const int end_day = stcm.window_end_day();
        const auto window = stcm.drain_window();
        reports.push_back(evaluate_window(window, storage_observed, end_day, setup.network, vocab,
                                          missing, script.reasoner));
        spdlog::debug("window ending day {}: {} visits, predicted {}, storage {}", end_day,
                      window.size(), reports.back().predicted, reports.back().storage_items);
        storage_observed.clear();
    };

    auto next_event = script.events.begin();
    for (int day = 1; day <= script.duration_days; ++day) {
        if (script.reset_days.count(day) != 0) {
            missing = reset_list(missing);
        }
        for (; next_event != script.events.end() && next_event->day == day; ++next_event) {
            env.apply(*next_event);
        }
        for (const auto& ctx : schedule_day(script, day, rngs.schedule)) {
            auto lv = sense(ctx, day);
            if (env.context(ctx).is_storage) {
                auto seen = decode(lv.values, 0.0, vocab);
                storage_observed.insert(seen.begin(), seen.end());
            } else {
                stcm.store(std::move(lv));
            }
        }
        if (script.storage_visits.count(day) != 0) {
            for (const auto& ctx : env.storage_contexts()) {
                auto seen = decode(sense(ctx, day).values, 0.0, vocab);
                storage_observed.insert(seen.begin(), seen.end());
            }
        }
        if (day == stcm.window_end_day()) {
            close_window();
        }
    }
    // trailing partial window
    if (stcm.window_start_day() <= script.duration_days) {
        close_window();
        reports.back().window_end_day = script.duration_days;
    }
    return ScenarioResult{std::move(reports), std::move(stcm), std::move(missing),
                          script.duration_days + 1};
}

std::vector<MissingReport> run_scenario(const ScenarioScript& script, const ScenarioSetup& setup,
                                        RngStreams& rngs)
{
    return run_scenario_detailed(script, setup, rngs).reports;
}

std::vector<MissingReport> run_scenario(const ScenarioScript& script)
{
    script.validate();
    RngStreams rngs(script.rng_seed);
    const auto setup = prepare_scenario(script, rngs.training);
    return run_scenario(script, setup, rngs);
}

ScenarioScript default_household_script()
{
    ScenarioScript s;
    s.vocabulary = Vocabulary({"book", "mouse", "keyboard", "stapler", "milk", "apple", "banana",
                               "cereal", "orange", "honey"});
    auto& env = s.environment;
    env.add_context("home_office");
    env.add_context("kitchen");
    env.add_context("dining_area");
    env.add_context("storage_space", true);
    for (const char* item : {"book", "mouse", "keyboard", "stapler"}) {
        env.place("home_office", std::string(item) + "#1", item);
    }
    for (const char* item : {"milk", "apple", "banana", "cereal", "orange", "honey"}) {
        env.place("kitchen", std::string(item) + "#1", item);
    }
    for (const char* item : {"cereal", "stapler", "honey"}) {
        env.place("storage_space", std::string(item) + "#2", item);
    }
    return s;
}

}  // namespace ctxmem
