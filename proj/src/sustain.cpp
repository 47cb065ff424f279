#include "ctxmem/sustain.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "ctxmem/errors.hpp"

namespace ctxmem {

namespace {

std::size_t argmax_lowest(const std::vector<double>& values)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    return best;
}

}  // namespace

void SustainParams::validate() const
{
    if (!(r >= 0.0) || !(beta >= 0.0)) {
        throw InvalidInputError("SUSTAIN r and beta must be non-negative");
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw InvalidInputError("SUSTAIN learning rate must lie in (0, 1]");
    }
    if (!(lambda_init > 0.0)) {
        throw InvalidInputError("SUSTAIN initial lambda must be positive");
    }
}

SustainNetwork::SustainNetwork(std::size_t dimension, SustainParams params) : params_(params)
{
    params_.validate();
    if (dimension == 0) {
        throw InvalidInputError("network dimension must be positive");
    }
    lambda_.assign(dimension, params_.lambda_init);
}

SustainNetwork::SustainNetwork(SustainParams params, std::vector<double> lambda,
                               std::vector<Cluster> clusters)
    : params_(params), lambda_(std::move(lambda)), clusters_(std::move(clusters))
{
    params_.validate();
    if (lambda_.empty()) {
        throw InvalidInputError("network dimension must be positive");
    }
    for (double l : lambda_) {
        if (!(l > 0.0)) {
            throw InvalidInputError("lambda components must be positive");
        }
    }
    for (const auto& c : clusters_) {
        if (c.centroid.size() != lambda_.size()) {
            throw DimensionError("cluster centroid dimension differs from lambda");
        }
        if (c.label.empty()) {
            throw InvalidInputError("cluster label must be non-empty");
        }
        for (double v : c.centroid) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw InvalidInputError("cluster centroid components must lie in [0, 1]");
            }
        }
    }
}

void SustainNetwork::check_input(std::span<const double> x) const
{
    if (x.size() != lambda_.size()) {
        throw DimensionError("input has " + std::to_string(x.size()) +
                             " components, network has " + std::to_string(lambda_.size()));
    }
}

std::vector<double> SustainNetwork::activations(std::span<const double> x) const
{
    check_input(x);
    double denom = 0.0;
    std::vector<double> weight(lambda_.size());
    for (std::size_t j = 0; j < lambda_.size(); ++j) {
        weight[j] = std::pow(lambda_[j], params_.r);
        denom += weight[j];
    }
    std::vector<double> out;
    out.reserve(clusters_.size());
    for (const auto& c : clusters_) {
        double num = 0.0;
        for (std::size_t j = 0; j < lambda_.size(); ++j) {
            const double mu = std::abs(x[j] - c.centroid[j]);
            num += weight[j] * std::exp(-lambda_[j] * mu);
        }
        out.push_back(num / denom);
    }
    return out;
}

std::vector<double> SustainNetwork::inhibited_activations(std::span<const double> x) const
{
    auto h = activations(x);
    double total = 0.0;
    for (double v : h) {
        total += std::pow(v, params_.beta);
    }
    for (auto& v : h) {
        v = std::pow(v, params_.beta) / total * v;
    }
    return h;
}

std::size_t SustainNetwork::winner(std::span<const double> x) const
{
    if (clusters_.empty()) {
        throw StateError("network has no clusters");
    }
    return argmax_lowest(activations(x));
}

const std::string& SustainNetwork::predict_category(std::span<const double> x) const
{
    if (clusters_.empty()) {
        throw StateError("cannot predict a category with an empty network");
    }
    const std::size_t out = argmax_lowest(inhibited_activations(x));
    // Inhibition is a monotone reweighting of positive activations.
    assert(out == winner(x));
    return clusters_[out].label;
}

std::size_t SustainNetwork::non_storage_count() const
{
    return static_cast<std::size_t>(
        std::count_if(clusters_.begin(), clusters_.end(), [](const Cluster& c) { return !c.is_storage; }));
}

bool SustainNetwork::learn_example(std::span<const double> x, const std::string& label,
                                   bool is_storage)
{
    check_input(x);
    if (label.empty()) {
        throw InvalidInputError("training label must be non-empty");
    }
    for (double v : x) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InvalidInputError("training LV components must lie in [0, 1]");
        }
    }

    const bool label_known = std::any_of(clusters_.begin(), clusters_.end(),
                                         [&](const Cluster& c) { return c.label == label; });
    std::size_t win = 0;
    if (label_known) {
        win = winner(x);
    }
    if (!label_known || clusters_[win].label != label) {
        clusters_.push_back(Cluster{{x.begin(), x.end()}, label, is_storage});
        return true;
    }

    auto& c = clusters_[win];
    const double eta = params_.eta;
    for (std::size_t j = 0; j < lambda_.size(); ++j) {
        const double mu = std::abs(x[j] - c.centroid[j]);
        const double lm = lambda_[j] * mu;
        lambda_[j] = std::max(kMinLambda, lambda_[j] + eta * std::exp(-lm) * (1.0 - lm));
        c.centroid[j] += eta * (x[j] - c.centroid[j]);
    }
    return false;
}

}  // namespace ctxmem
