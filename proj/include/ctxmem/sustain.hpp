#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ctxmem/vocabulary.hpp"

namespace ctxmem {

struct SustainParams {
    double r = 2.0;            ///< attentional focus exponent
    double beta = 1.0;         ///< lateral inhibition exponent
    double eta = 0.1;          ///< learning rate, in (0, 1]
    double lambda_init = 1.0;  ///< initial receptive-field tuning

    void validate() const;
    bool operator==(const SustainParams&) const = default;
};

struct Cluster {
    std::vector<double> centroid;
    std::string label;
    bool is_storage = false;

    bool operator==(const Cluster&) const = default;
};

/// Supervised SUSTAIN network holding the long-term contextual memory.
///
/// Each cluster carries a hard context label. A training example that is
/// mispredicted (or whose label is new) recruits a cluster centred on it;
/// otherwise the winning cluster moves towards the example and the shared
/// per-dimension tuning `lambda` adapts.
///
/// Writers must be serialized externally; const members are safe to call
/// concurrently between writes.
class SustainNetwork {
public:
    static constexpr double kMinLambda = 1e-6;

    explicit SustainNetwork(std::size_t dimension, SustainParams params = {});
    /// Rebuild from persisted state. Validates dimensions and ranges.
    SustainNetwork(SustainParams params, std::vector<double> lambda, std::vector<Cluster> clusters);

    /// Returns true when a new cluster was recruited.
    bool learn_example(std::span<const double> x, const std::string& label, bool is_storage = false);
    bool learn_example(const LatentVariable& x, const std::string& label, bool is_storage = false)
    {
        return learn_example(x.values, label, is_storage);
    }

    /// Raw activation H_i of every cluster for input `x`.
    std::vector<double> activations(std::span<const double> x) const;
    /// Activations after lateral inhibition.
    std::vector<double> inhibited_activations(std::span<const double> x) const;
    /// Index of the most active cluster; ties go to the lowest index.
    std::size_t winner(std::span<const double> x) const;

    const std::string& predict_category(std::span<const double> x) const;

    std::size_t dimension() const { return lambda_.size(); }
    std::size_t size() const { return clusters_.size(); }
    bool empty() const { return clusters_.empty(); }
    std::size_t non_storage_count() const;

    const std::vector<Cluster>& clusters() const { return clusters_; }
    const std::vector<double>& lambda() const { return lambda_; }
    const SustainParams& params() const { return params_; }

    bool operator==(const SustainNetwork&) const = default;

private:
    void check_input(std::span<const double> x) const;

    SustainParams params_;
    std::vector<double> lambda_;
    std::vector<Cluster> clusters_;
};

}  // namespace ctxmem
