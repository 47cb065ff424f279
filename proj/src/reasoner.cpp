#include "ctxmem/reasoner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ctxmem/errors.hpp"

namespace ctxmem {

PredictionLV prediction_lv(const LatentVariable& x, const SustainNetwork& net)
{
    const std::size_t d = net.dimension();
    if (x.size() != d) {
        throw DimensionError("observation has " + std::to_string(x.size()) +
                             " components, network has " + std::to_string(d));
    }
    const std::size_t k = net.non_storage_count();
    if (k == 0) {
        throw StateError("prediction needs at least one non-storage cluster");
    }

    const auto& lambda = net.lambda();
    PredictionLV v{std::vector<double>(d, 0.0), x.day};
    for (const auto& c : net.clusters()) {
        if (c.is_storage) {
            continue;
        }
        for (std::size_t j = 0; j < d; ++j) {
            if (x.values[j] > 0.0) {
                continue;  // present in the input: clamped to zero
            }
            v.values[j] += std::exp(lambda[j] * (x.values[j] - c.centroid[j]));
        }
    }
    for (auto& value : v.values) {
        value = std::min(value / static_cast<double>(k), 1.0);
    }
    return v;
}

std::vector<double> aggregate_window(std::span<const PredictionLV> predictions)
{
    if (predictions.empty()) {
        throw InvalidInputError("cannot aggregate an empty window");
    }
    const std::size_t d = predictions.front().values.size();
    std::vector<double> log_sum(d, 0.0);
    for (const auto& p : predictions) {
        if (p.values.size() != d) {
            throw DimensionError("prediction LVs in a window must share one dimension");
        }
        for (std::size_t j = 0; j < d; ++j) {
            log_sum[j] += std::log(p.values[j]);  // log(0) = -inf
        }
    }
    std::vector<double> out(d);
    for (std::size_t j = 0; j < d; ++j) {
        if (std::isinf(log_sum[j])) {
            out[j] = 0.0;
            continue;
        }
        out[j] = std::exp(log_sum[j]);
        if (out[j] == 0.0) {
            out[j] = std::numeric_limits<double>::denorm_min();
        }
    }
    return out;
}

LabelSet decode_missing(std::span<const double> v_final, const SustainNetwork& net,
                        const Vocabulary& vocab, double presence_theta)
{
    if (v_final.size() != vocab.size() || net.dimension() != vocab.size()) {
        throw DimensionError("decode_missing: dimensions of vector, network and vocabulary differ");
    }
    LabelSet out;
    for (std::size_t j = 0; j < v_final.size(); ++j) {
        if (!(v_final[j] > 0.0)) {
            continue;
        }
        const bool household_item =
            std::any_of(net.clusters().begin(), net.clusters().end(), [&](const Cluster& c) {
                return !c.is_storage && c.centroid[j] >= presence_theta;
            });
        if (household_item) {
            out.insert(vocab.label(j));
        }
    }
    return out;
}

LabelSet observed_set(std::span<const LatentVariable> window, const Vocabulary& vocab)
{
    LabelSet out;
    for (const auto& lv : window) {
        if (lv.size() != vocab.size()) {
            throw DimensionError("observation dimension differs from the vocabulary");
        }
        for (std::size_t j = 0; j < lv.size(); ++j) {
            if (lv.values[j] > 0.0) {
                out.insert(vocab.label(j));
            }
        }
    }
    return out;
}

StorageSplit apply_storage(const LabelSet& candidates, const LabelSet& storage_observed)
{
    StorageSplit out;
    for (const auto& label : candidates) {
        if (storage_observed.count(label) != 0) {
            out.storage_items.insert(label);
        } else {
            out.missing.insert(label);
        }
    }
    return out;
}

MissingList update_missing_list(const MissingList& m, const LabelSet& predicted,
                                const LabelSet& observed)
{
    MissingList out;
    for (const auto& label : m.items) {
        if (observed.count(label) == 0) {
            out.items.insert(label);
        }
    }
    out.items.insert(predicted.begin(), predicted.end());
    return out;
}

LabelSet diff_with_user_list(const MissingList& m, const LabelSet& user_list)
{
    LabelSet out;
    std::set_difference(m.items.begin(), m.items.end(), user_list.begin(), user_list.end(),
                        std::inserter(out, out.end()));
    return out;
}

MissingList reset_list(const MissingList&)
{
    return {};
}

MissingReport evaluate_window(std::span<const LatentVariable> window,
                              const LabelSet& storage_observed, int window_end_day,
                              const SustainNetwork& net, const Vocabulary& vocab,
                              MissingList& missing, const ReasonerConfig& config)
{
    MissingReport report;
    report.window_end_day = window_end_day;
    report.observed = observed_set(window, vocab);

    if (!window.empty()) {
        std::vector<PredictionLV> predictions;
        predictions.reserve(window.size());
        for (const auto& x : window) {
            predictions.push_back(prediction_lv(x, net));
        }
        const auto v_final = aggregate_window(predictions);
        auto split = apply_storage(decode_missing(v_final, net, vocab, config.presence_theta),
                                   storage_observed);
        report.predicted = std::move(split.missing);
        report.storage_items = std::move(split.storage_items);
    }

    missing = update_missing_list(missing, report.predicted, report.observed);
    report.missing_list = missing.items;
    return report;
}

}  // namespace ctxmem
