#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctxmem/environment.hpp"
#include "ctxmem/perception.hpp"
#include "ctxmem/reasoner.hpp"
#include "ctxmem/stcm.hpp"
#include "ctxmem/sustain.hpp"
#include "ctxmem/vocabulary.hpp"

namespace ctxmem {

struct PerceptionConfig {
    std::size_t feature_dim = 32;
    double sigma = 0.1;
    double separation = 1.0;
    std::size_t training_samples_per_class = 20;

    bool operator==(const PerceptionConfig&) const = default;
};

/// How the long-term memory is taught before the scenario starts: every
/// context of the initial environment is sensed `exemplars_per_context` times.
struct TeachingConfig {
    std::size_t exemplars_per_context = 1;
    bool noise_free = true;

    bool operator==(const TeachingConfig&) const = default;
};

/// A scripted run. Days are numbered from 1; reports are emitted on the last
/// day of every `window_days` window (days 2, 4, 6, ... for the default).
struct ScenarioScript {
    int duration_days = 6;
    int visits_per_day = 3;
    int window_days = 2;
    std::uint64_t rng_seed = 0;
    NoiseProfile noise;
    PerceptionConfig perception;
    TeachingConfig teaching;
    SustainParams sustain;
    ReasonerConfig reasoner;

    Vocabulary vocabulary;
    Environment environment;
    std::vector<ScenarioEvent> events;  ///< sorted by day, stable within a day
    std::map<int, std::vector<std::string>> visit_plan;
    std::optional<std::vector<std::string>> default_visit_plan;
    std::set<int> storage_visits;
    std::set<int> reset_days;

    /// Checks ranges, event ordering and every cross reference.
    void validate() const;
};

/// Independent generator streams derived from one seed, so that e.g. changing
/// the noise profile never perturbs the visit schedule.
struct RngStreams {
    Rng schedule;
    Rng perception;
    Rng training;

    explicit RngStreams(std::uint64_t seed);
};

struct ScenarioSetup {
    SyntheticFeatureModel model;
    NcmClassifier classifier;
    SustainNetwork network;
};

struct PerceptionStack {
    SyntheticFeatureModel model;
    NcmClassifier classifier;
};

/// Feature model plus an NCM classifier trained on draws from it.
PerceptionStack build_perception(const ScenarioScript& script, Rng& training_rng);

/// Senses every context of the initial environment and feeds the exemplars
/// to `net`, labelled with the context name.
void teach_contexts(const ScenarioScript& script, const PerceptionStack& perception,
                    SustainNetwork& net, Rng& training_rng);

/// build_perception + teach_contexts on a fresh network.
ScenarioSetup prepare_scenario(const ScenarioScript& script, Rng& training_rng);

std::vector<std::string> schedule_day(const ScenarioScript& script, int day, Rng& rng);

struct ScenarioResult {
    std::vector<MissingReport> reports;
    StcmBuffer stcm;
    MissingList missing;
    int next_day = 1;
};

ScenarioResult run_scenario_detailed(const ScenarioScript& script, const ScenarioSetup& setup,
                                     RngStreams& rngs);

std::vector<MissingReport> run_scenario(const ScenarioScript& script, const ScenarioSetup& setup,
                                        RngStreams& rngs);

/// prepare + run with streams seeded from `script.rng_seed`.
std::vector<MissingReport> run_scenario(const ScenarioScript& script);

/// Household used throughout the experiments: home_office, kitchen, an empty
/// dining_area and a storage_space, over ten object categories. Six days,
/// three random visits per day, two-day window, calibrated noise.
ScenarioScript default_household_script();

}  // namespace ctxmem
