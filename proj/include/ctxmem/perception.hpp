#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctxmem/environment.hpp"
#include "ctxmem/vocabulary.hpp"

namespace ctxmem {

using Rng = std::mt19937_64;
using Feature = std::vector<double>;

/// Stand-in for an image feature extractor: each category owns a true mean
/// in feature space and observations are isotropic Gaussian draws around it.
class SyntheticFeatureModel {
public:
    SyntheticFeatureModel(Vocabulary vocab, std::vector<Feature> class_means, double sigma);

    /// Means are `separation` times the unit axes when the vocabulary fits in
    /// `feature_dim`; otherwise seeded Gaussian directions of length
    /// `separation`.
    static SyntheticFeatureModel make(const Vocabulary& vocab, std::size_t feature_dim = 32,
                                      double sigma = 0.1, double separation = 1.0,
                                      std::uint64_t seed = 0);

    Feature sample(std::size_t class_index, Rng& rng) const;

    const Vocabulary& vocabulary() const { return vocab_; }
    std::size_t feature_dim() const { return feature_dim_; }
    double sigma() const { return sigma_; }
    const Feature& true_mean(std::size_t class_index) const { return class_means_.at(class_index); }

private:
    Vocabulary vocab_;
    std::vector<Feature> class_means_;
    std::size_t feature_dim_ = 0;
    double sigma_ = 0.1;
};

/// Nearest-class-mean classifier. Classes are kept in vocabulary order so
/// that equidistant features resolve to the lowest vocabulary index.
class NcmClassifier {
public:
    struct ClassEntry {
        std::size_t vocab_index = 0;
        std::string label;
        Feature mean;
        std::size_t count = 0;
    };

    const std::vector<ClassEntry>& classes() const { return classes_; }
    const Feature& mean_of(const std::string& label) const;
    std::size_t feature_dim() const { return classes_.empty() ? 0 : classes_.front().mean.size(); }

    const std::string& classify(std::span<const double> feature) const;

private:
    friend NcmClassifier train_ncm(std::span<const std::pair<Feature, std::string>>,
                                   const Vocabulary&);
    std::vector<ClassEntry> classes_;
};

NcmClassifier train_ncm(std::span<const std::pair<Feature, std::string>> samples,
                        const Vocabulary& vocab);

/// Draws `per_class` labelled samples for every category of the model.
std::vector<std::pair<Feature, std::string>>
draw_training_set(const SyntheticFeatureModel& model, std::size_t per_class, Rng& rng);

struct NoiseProfile {
    // Defaults reproduce the measured error rates of a real detector stack:
    // 0.3 + 0.7 * 0.2 = 0.44 of objects lost or mislabelled, and 35 spurious
    // detections over 54 visits.
    double p_miss_detect = 0.3;
    double p_misclassify = 0.2;
    double spurious_rate = 35.0 / 54.0;

    static NoiseProfile none() { return {0.0, 0.0, 0.0}; }
    void validate() const;

    bool operator==(const NoiseProfile&) const = default;
};

struct Detection {
    Feature feature;
    std::string predicted_label;
    /// Unset for spurious detections.
    std::optional<std::string> ground_truth_label;
};

std::vector<Detection> sense_context(const Environment& env, const std::string& context,
                                     const NoiseProfile& noise,
                                     const SyntheticFeatureModel& model,
                                     const NcmClassifier& classifier, Rng& rng);

std::vector<std::string> predicted_labels(const std::vector<Detection>& detections);

}  // namespace ctxmem
