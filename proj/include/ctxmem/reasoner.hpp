#pragma once

#include <span>
#include <vector>

#include "ctxmem/sustain.hpp"
#include "ctxmem/vocabulary.hpp"

namespace ctxmem {

/// Per-visit missingness scores. Exactly zero on every dimension present in
/// the source observation, strictly positive elsewhere.
struct PredictionLV {
    std::vector<double> values;
    int source_day = 0;

    bool operator==(const PredictionLV&) const = default;
};

struct MissingReport {
    int window_end_day = 0;
    LabelSet predicted;      ///< P, after storage exclusion
    LabelSet observed;       ///< O
    LabelSet storage_items;  ///< candidates vetoed by a storage visit
    LabelSet missing_list;   ///< M after this window's update

    bool operator==(const MissingReport&) const = default;
};

struct MissingList {
    LabelSet items;
    bool operator==(const MissingList&) const = default;
};

struct StorageSplit {
    LabelSet missing;
    LabelSet storage_items;
};

/// Compares an observation against every non-storage cluster:
/// z_ij = exp(lambda_j * (x_j - c_ij)), zeroed where x_j > 0, then averaged
/// over clusters and capped at 1.
PredictionLV prediction_lv(const LatentVariable& x, const SustainNetwork& net);

/// Per-dimension product of the window's prediction LVs, accumulated in log
/// space. A product that is mathematically positive never comes back as 0:
/// if it underflows it is reported as the smallest positive double.
std::vector<double> aggregate_window(std::span<const PredictionLV> predictions);

/// Household-item mask: a dimension counts as a household item when some
/// non-storage centroid reaches `presence_theta` on it.
LabelSet decode_missing(std::span<const double> v_final, const SustainNetwork& net,
                        const Vocabulary& vocab, double presence_theta = 0.5);

LabelSet observed_set(std::span<const LatentVariable> window, const Vocabulary& vocab);

StorageSplit apply_storage(const LabelSet& candidates, const LabelSet& storage_observed);

/// M' = (M \ O) u P
MissingList update_missing_list(const MissingList& m, const LabelSet& predicted,
                                const LabelSet& observed);

LabelSet diff_with_user_list(const MissingList& m, const LabelSet& user_list);

MissingList reset_list(const MissingList& m);

struct ReasonerConfig {
    double presence_theta = 0.5;
    bool operator==(const ReasonerConfig&) const = default;
};

/// Runs one reporting cycle over a drained window and updates `missing`.
/// A window without regular observations predicts nothing.
MissingReport evaluate_window(std::span<const LatentVariable> window,
                              const LabelSet& storage_observed, int window_end_day,
                              const SustainNetwork& net, const Vocabulary& vocab,
                              MissingList& missing, const ReasonerConfig& config = {});

}  // namespace ctxmem
