#pragma once

#include <nlohmann/json.hpp>

#include "ctxmem/environment.hpp"
#include "ctxmem/perception.hpp"
#include "ctxmem/reasoner.hpp"
#include "ctxmem/scenario.hpp"
#include "ctxmem/stcm.hpp"
#include "ctxmem/sustain.hpp"
#include "ctxmem/vocabulary.hpp"

// JSON mappings shared by the scenario files, state snapshots and the HTTP
// API. Readers throw InvalidInputError on schema violations.

namespace ctxmem {

using json = nlohmann::json;

void to_json(json& j, const Vocabulary& vocab);
Vocabulary vocabulary_from_json(const json& j);

const char* to_string(LvKind kind);
void to_json(json& j, const LatentVariable& lv);
LatentVariable latent_from_json(const json& j);

void to_json(json& j, const SustainParams& p);
SustainParams sustain_params_from_json(const json& j);
void to_json(json& j, const Cluster& c);
void to_json(json& j, const SustainNetwork& net);
SustainNetwork network_from_json(const json& j);

void to_json(json& j, const StcmBuffer& buf);
StcmBuffer stcm_from_json(const json& j);

void to_json(json& j, const NoiseProfile& n);
NoiseProfile noise_from_json(const json& j, NoiseProfile base = {});

void to_json(json& j, const ScenarioEvent& e);
ScenarioEvent event_from_json(const json& j);

void to_json(json& j, const Environment& env);
/// Accepts {"name": {"storage": bool, "items": [...]}} where an item is either
/// {"id": ..., "category": ...} or a bare category string (id auto-assigned
/// as "<category>#<n>").
Environment environment_from_json(const json& j);

void to_json(json& j, const MissingReport& r);
MissingReport report_from_json(const json& j);

json reports_to_json(const std::vector<MissingReport>& reports);

ScenarioScript scenario_from_json(const json& j);
ScenarioScript load_scenario_file(const std::string& path);

LabelSet label_set_from_json(const json& j);

}  // namespace ctxmem
