#include "ctxmem/perception.hpp"

#include <cmath>
#include <limits>

#include "ctxmem/errors.hpp"

namespace ctxmem {

SyntheticFeatureModel::SyntheticFeatureModel(Vocabulary vocab, std::vector<Feature> class_means,
                                             double sigma)
    : vocab_(std::move(vocab)), class_means_(std::move(class_means)), sigma_(sigma)
{
    if (!(sigma_ > 0.0)) {
        throw InvalidInputError("feature sigma must be positive");
    }
    if (class_means_.size() != vocab_.size()) {
        throw DimensionError("feature model needs one true mean per vocabulary category");
    }
    feature_dim_ = class_means_.empty() ? 0 : class_means_.front().size();
    if (feature_dim_ == 0) {
        throw InvalidInputError("feature dimension must be positive");
    }
    for (const auto& m : class_means_) {
        if (m.size() != feature_dim_) {
            throw DimensionError("class means must share one feature dimension");
        }
    }
}

SyntheticFeatureModel SyntheticFeatureModel::make(const Vocabulary& vocab, std::size_t feature_dim,
                                                  double sigma, double separation,
                                                  std::uint64_t seed)
{
    if (feature_dim == 0) {
        throw InvalidInputError("feature dimension must be positive");
    }
    std::vector<Feature> means(vocab.size(), Feature(feature_dim, 0.0));
    if (vocab.size() <= feature_dim) {
        for (std::size_t c = 0; c < vocab.size(); ++c) {
            means[c][c] = separation;
        }
    } else {
        Rng rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (auto& m : means) {
            double norm = 0.0;
            for (auto& v : m) {
                v = normal(rng);
                norm += v * v;
            }
            norm = std::sqrt(norm);
            for (auto& v : m) {
                v *= separation / norm;
            }
        }
    }
    return SyntheticFeatureModel(vocab, std::move(means), sigma);
}

Feature SyntheticFeatureModel::sample(std::size_t class_index, Rng& rng) const
{
    const auto& mean = class_means_.at(class_index);
    std::normal_distribution<double> normal(0.0, sigma_);
    Feature f(mean.size());
    for (std::size_t i = 0; i < mean.size(); ++i) {
        f[i] = mean[i] + normal(rng);
    }
    return f;
}

const Feature& NcmClassifier::mean_of(const std::string& label) const
{
    for (const auto& c : classes_) {
        if (c.label == label) {
            return c.mean;
        }
    }
    throw NotFoundError("classifier has no class " + label);
}

const std::string& NcmClassifier::classify(std::span<const double> feature) const
{
    if (classes_.empty()) {
        throw StateError("classifier has no trained classes");
    }
    if (feature.size() != feature_dim()) {
        throw DimensionError("feature dimension does not match the classifier");
    }
    const ClassEntry* best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& c : classes_) {
        double dist = 0.0;
        for (std::size_t i = 0; i < feature.size(); ++i) {
            const double diff = feature[i] - c.mean[i];
            dist += diff * diff;
        }
        // strict: equal distances keep the earlier (lower vocabulary index) class
        if (dist < best_dist) {
            best_dist = dist;
            best = &c;
        }
    }
    return best->label;
}

NcmClassifier train_ncm(std::span<const std::pair<Feature, std::string>> samples,
                        const Vocabulary& vocab)
{
    if (samples.empty()) {
        throw InvalidInputError("cannot train a classifier from an empty sample list");
    }
    const std::size_t dim = samples.front().first.size();
    if (dim == 0) {
        throw InvalidInputError("training features must be non-empty");
    }
    std::vector<Feature> sums(vocab.size());
    std::vector<std::size_t> counts(vocab.size(), 0);
    for (const auto& [feature, label] : samples) {
        if (feature.size() != dim) {
            throw DimensionError("training features must share one dimension");
        }
        auto idx = vocab.index_of(label);
        if (!idx) {
            throw NotFoundError("training label outside the vocabulary: " + label);
        }
        auto& sum = sums[*idx];
        if (sum.empty()) {
            sum.assign(dim, 0.0);
        }
        for (std::size_t i = 0; i < dim; ++i) {
            sum[i] += feature[i];
        }
        ++counts[*idx];
    }

    NcmClassifier out;
    for (std::size_t c = 0; c < vocab.size(); ++c) {
        if (counts[c] == 0) {
            continue;
        }
        NcmClassifier::ClassEntry entry{c, vocab.label(c), std::move(sums[c]), counts[c]};
        for (auto& v : entry.mean) {
            v /= static_cast<double>(entry.count);
        }
        out.classes_.push_back(std::move(entry));
    }
    return out;
}

std::vector<std::pair<Feature, std::string>>
draw_training_set(const SyntheticFeatureModel& model, std::size_t per_class, Rng& rng)
{
    std::vector<std::pair<Feature, std::string>> out;
    out.reserve(per_class * model.vocabulary().size());
    for (std::size_t c = 0; c < model.vocabulary().size(); ++c) {
        for (std::size_t n = 0; n < per_class; ++n) {
            out.emplace_back(model.sample(c, rng), model.vocabulary().label(c));
        }
    }
    return out;
}

void NoiseProfile::validate() const
{
    auto is_prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!is_prob(p_miss_detect) || !is_prob(p_misclassify)) {
        throw InvalidInputError("noise probabilities must lie in [0, 1]");
    }
    if (!(spurious_rate >= 0.0) || !std::isfinite(spurious_rate)) {
        throw InvalidInputError("spurious detection rate must be finite and non-negative");
    }
}

std::vector<Detection> sense_context(const Environment& env, const std::string& context,
                                     const NoiseProfile& noise,
                                     const SyntheticFeatureModel& model,
                                     const NcmClassifier& classifier, Rng& rng)
{
    noise.validate();
    const auto& ctx = env.context(context);
    const auto& vocab = model.vocabulary();
    const std::size_t n_classes = vocab.size();

    auto classify_sample = [&](std::size_t class_index) {
        Detection d;
        d.feature = model.sample(class_index, rng);
        d.predicted_label = classifier.classify(d.feature);
        return d;
    };

    std::vector<Detection> out;
    std::bernoulli_distribution missed(noise.p_miss_detect);
    std::bernoulli_distribution mislabel(noise.p_misclassify);
    for (const auto& [instance, category] : ctx.items) {
        auto true_idx = vocab.index_of(category);
        if (!true_idx) {
            throw NotFoundError("item " + instance + " has a category outside the vocabulary");
        }
        if (missed(rng)) {
            continue;
        }
        std::size_t drawn = *true_idx;
        if (n_classes > 1 && mislabel(rng)) {
            // uniform over the other classes
            std::uniform_int_distribution<std::size_t> pick(0, n_classes - 2);
            drawn = pick(rng);
            if (drawn >= *true_idx) {
                ++drawn;
            }
        }
        auto d = classify_sample(drawn);
        d.ground_truth_label = category;
        out.push_back(std::move(d));
    }

    if (noise.spurious_rate > 0.0) {
        std::poisson_distribution<int> spurious(noise.spurious_rate);
        std::uniform_int_distribution<std::size_t> pick(0, n_classes - 1);
        const int extra = spurious(rng);
        for (int k = 0; k < extra; ++k) {
            out.push_back(classify_sample(pick(rng)));
        }
    }
    return out;
}

std::vector<std::string> predicted_labels(const std::vector<Detection>& detections)
{
    std::vector<std::string> out;
    out.reserve(detections.size());
    for (const auto& d : detections) {
        out.push_back(d.predicted_label);
    }
    return out;
}

}  // namespace ctxmem
