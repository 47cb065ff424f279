#include "ctxmem/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "ctxmem/errors.hpp"

namespace ctxmem {

namespace {

template <typename Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const json::exception& e) {
        throw InvalidInputError(std::string("invalid ") + what + ": " + e.what());
    }
}

template <typename T>
T value_or(const json& j, const char* key, T fallback)
{
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return fallback;
    }
    return it->get<T>();
}

void require_object(const json& j, const char* what)
{
    if (!j.is_object()) {
        throw InvalidInputError(std::string(what) + " must be a JSON object");
    }
}

}  // namespace

void to_json(json& j, const Vocabulary& vocab)
{
    j = vocab.labels();
}

Vocabulary vocabulary_from_json(const json& j)
{
    return guarded("vocabulary", [&] { return Vocabulary(j.get<std::vector<std::string>>()); });
}

const char* to_string(LvKind kind)
{
    return kind == LvKind::observation ? "observation" : "prediction";
}

void to_json(json& j, const LatentVariable& lv)
{
    j = json{{"values", lv.values},
             {"day", lv.day},
             {"context", lv.context ? json(*lv.context) : json(nullptr)},
             {"kind", to_string(lv.kind)}};
}

LatentVariable latent_from_json(const json& j)
{
    return guarded("latent variable", [&] {
        require_object(j, "latent variable");
        LatentVariable lv;
        lv.values = j.at("values").get<std::vector<double>>();
        lv.day = j.at("day").get<int>();
        if (auto it = j.find("context"); it != j.end() && !it->is_null()) {
            lv.context = it->get<std::string>();
        }
        const auto kind = value_or<std::string>(j, "kind", "observation");
        if (kind == "observation") {
            lv.kind = LvKind::observation;
        } else if (kind == "prediction") {
            lv.kind = LvKind::prediction;
        } else {
            throw InvalidInputError("unknown LV kind: " + kind);
        }
        for (double v : lv.values) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw InvalidInputError("LV components must lie in [0, 1]");
            }
        }
        return lv;
    });
}

void to_json(json& j, const SustainParams& p)
{
    j = json{{"r", p.r}, {"beta", p.beta}, {"eta", p.eta}, {"lambdaInit", p.lambda_init}};
}

SustainParams sustain_params_from_json(const json& j)
{
    return guarded("SUSTAIN parameters", [&] {
        require_object(j, "SUSTAIN parameters");
        SustainParams p;
        p.r = value_or(j, "r", p.r);
        p.beta = value_or(j, "beta", p.beta);
        p.eta = value_or(j, "eta", p.eta);
        p.lambda_init = value_or(j, "lambdaInit", p.lambda_init);
        p.validate();
        return p;
    });
}

void to_json(json& j, const Cluster& c)
{
    j = json{{"centroid", c.centroid}, {"label", c.label}, {"isStorage", c.is_storage}};
}

void to_json(json& j, const SustainNetwork& net)
{
    j = json{{"lambda", net.lambda()}, {"params", net.params()}, {"clusters", net.clusters()}};
}

SustainNetwork network_from_json(const json& j)
{
    return guarded("network", [&] {
        require_object(j, "network");
        std::vector<Cluster> clusters;
        for (const auto& c : j.at("clusters")) {
            clusters.push_back(Cluster{c.at("centroid").get<std::vector<double>>(),
                                       c.at("label").get<std::string>(),
                                       value_or(c, "isStorage", false)});
        }
        return SustainNetwork(sustain_params_from_json(j.at("params")),
                              j.at("lambda").get<std::vector<double>>(), std::move(clusters));
    });
}

void to_json(json& j, const StcmBuffer& buf)
{
    j = json{{"windowDays", buf.window_days()},
             {"windowStartDay", buf.window_start_day()},
             {"entries", buf.entries()}};
}

StcmBuffer stcm_from_json(const json& j)
{
    return guarded("STCM buffer", [&] {
        require_object(j, "STCM buffer");
        std::vector<LatentVariable> entries;
        for (const auto& e : j.at("entries")) {
            entries.push_back(latent_from_json(e));
        }
        return StcmBuffer(j.at("windowDays").get<int>(), j.at("windowStartDay").get<int>(),
                          std::move(entries));
    });
}

void to_json(json& j, const NoiseProfile& n)
{
    j = json{{"pMissDetect", n.p_miss_detect},
             {"pMisclassify", n.p_misclassify},
             {"spuriousRate", n.spurious_rate}};
}

NoiseProfile noise_from_json(const json& j, NoiseProfile base)
{
    return guarded("noise profile", [&] {
        require_object(j, "noise profile");
        base.p_miss_detect = value_or(j, "pMissDetect", base.p_miss_detect);
        base.p_misclassify = value_or(j, "pMisclassify", base.p_misclassify);
        base.spurious_rate = value_or(j, "spuriousRate", base.spurious_rate);
        base.validate();
        return base;
    });
}

void to_json(json& j, const ScenarioEvent& e)
{
    j = json{{"day", e.day}, {"action", to_string(e.action)}, {"instance", e.instance_id}};
    if (e.target_context) {
        j["target"] = *e.target_context;
    }
}

ScenarioEvent event_from_json(const json& j)
{
    return guarded("event", [&] {
        require_object(j, "event");
        ScenarioEvent e;
        e.day = value_or(j, "day", 1);
        e.action = event_action_from_string(j.at("action").get<std::string>());
        e.instance_id = j.at("instance").get<std::string>();
        if (auto it = j.find("target"); it != j.end() && !it->is_null()) {
            e.target_context = it->get<std::string>();
        }
        if (e.action == EventAction::remove && e.target_context) {
            throw InvalidInputError("remove events take no target");
        }
        if (e.action != EventAction::remove && !e.target_context) {
            throw InvalidInputError(std::string(to_string(e.action)) + " events need a target");
        }
        return e;
    });
}

void to_json(json& j, const Environment& env)
{
    j = json::object();
    for (const auto& [name, ctx] : env.contexts()) {
        json items = json::array();
        for (const auto& [id, category] : ctx.items) {
            items.push_back(json{{"id", id}, {"category", category}});
        }
        j[name] = json{{"storage", ctx.is_storage}, {"items", std::move(items)}};
    }
}

Environment environment_from_json(const json& j)
{
    return guarded("contexts", [&] {
        require_object(j, "contexts");
        Environment env;
        // explicit ids first so that generated ids never collide with them
        std::set<std::string> taken;
        for (const auto& [name, ctx] : j.items()) {
            for (const auto& item : ctx.at("items")) {
                if (item.is_object()) taken.insert(item.at("id").get<std::string>());
            }
        }
        std::map<std::string, int> next_serial;
        for (const auto& [name, ctx] : j.items()) {
            env.add_context(name, value_or(ctx, "storage", false));
            for (const auto& item : ctx.at("items")) {
                if (item.is_object()) {
                    env.place(name, item.at("id").get<std::string>(),
                              item.at("category").get<std::string>());
                    continue;
                }
                const auto category = item.get<std::string>();
                std::string id;
                do {
                    id = category + "#" + std::to_string(++next_serial[category]);
                } while (taken.count(id) != 0);
                taken.insert(id);
                env.place(name, id, category);
            }
        }
        return env;
    });
}

void to_json(json& j, const MissingReport& r)
{
    j = json{{"windowEndDay", r.window_end_day},
             {"predicted", r.predicted},
             {"observed", r.observed},
             {"storageItems", r.storage_items},
             {"missingList", r.missing_list}};
}

MissingReport report_from_json(const json& j)
{
    return guarded("report", [&] {
        MissingReport r;
        r.window_end_day = j.at("windowEndDay").get<int>();
        r.predicted = j.at("predicted").get<LabelSet>();
        r.observed = j.at("observed").get<LabelSet>();
        r.storage_items = j.at("storageItems").get<LabelSet>();
        r.missing_list = j.at("missingList").get<LabelSet>();
        return r;
    });
}

json reports_to_json(const std::vector<MissingReport>& reports)
{
    json out = json::array();
    for (const auto& r : reports) {
        out.push_back(r);
    }
    return out;
}

LabelSet label_set_from_json(const json& j)
{
    return guarded("label list", [&] { return j.get<LabelSet>(); });
}

ScenarioScript scenario_from_json(const json& j)
{
    auto script = guarded("scenario", [&] {
        require_object(j, "scenario");
        ScenarioScript s;
        s.duration_days = j.at("durationDays").get<int>();
        s.visits_per_day = value_or(j, "visitsPerDay", s.visits_per_day);
        s.window_days = value_or(j, "windowDays", s.window_days);
        s.rng_seed = value_or<std::uint64_t>(j, "rngSeed", 0);
        if (j.contains("noise")) s.noise = noise_from_json(j.at("noise"));
        if (j.contains("sustain")) s.sustain = sustain_params_from_json(j.at("sustain"));
        s.reasoner.presence_theta = value_or(j, "presenceTheta", s.reasoner.presence_theta);
        if (auto it = j.find("perception"); it != j.end()) {
            auto& p = s.perception;
            p.feature_dim = value_or(*it, "featureDim", p.feature_dim);
            p.sigma = value_or(*it, "sigma", p.sigma);
            p.separation = value_or(*it, "separation", p.separation);
            p.training_samples_per_class =
                value_or(*it, "trainingSamplesPerClass", p.training_samples_per_class);
        }
        if (auto it = j.find("teaching"); it != j.end()) {
            auto& t = s.teaching;
            t.exemplars_per_context = value_or(*it, "exemplarsPerContext", t.exemplars_per_context);
            t.noise_free = value_or(*it, "noiseFree", t.noise_free);
        }

        s.environment = environment_from_json(j.at("contexts"));
        if (j.contains("vocabulary")) {
            s.vocabulary = vocabulary_from_json(j.at("vocabulary"));
        } else {
            std::set<std::string> categories;
            for (const auto& [id, category] : s.environment.catalog()) categories.insert(category);
            s.vocabulary = Vocabulary({categories.begin(), categories.end()});
        }

        for (const auto& e : value_or(j, "events", json::array())) {
            s.events.push_back(event_from_json(e));
        }
        std::stable_sort(s.events.begin(), s.events.end(),
                         [](const ScenarioEvent& a, const ScenarioEvent& b) { return a.day < b.day; });

        const json plans = value_or(j, "visitPlan", json::object());
        for (const auto& [key, plan] : plans.items()) {
            auto contexts = plan.get<std::vector<std::string>>();
            if (key == "*") {
                s.default_visit_plan = std::move(contexts);
                continue;
            }
            std::size_t used = 0;
            int day = 0;
            try {
                day = std::stoi(key, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != key.size()) {
                throw InvalidInputError("visitPlan keys must be day numbers or \"*\": " + key);
            }
            s.visit_plan[day] = std::move(contexts);
        }
        s.storage_visits = value_or(j, "storageVisits", std::set<int>{});
        s.reset_days = value_or(j, "resetDays", std::set<int>{});
        return s;
    });
    script.validate();
    return script;
}

ScenarioScript load_scenario_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("cannot open scenario file " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInputError("scenario file " + path + " is not valid JSON: " + e.what());
    }
    return scenario_from_json(j);
}

}  // namespace ctxmem
