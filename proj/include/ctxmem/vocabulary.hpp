#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ctxmem {

using LabelSet = std::set<std::string>;

/// Ordered, immutable set of object categories. The position of a label is
/// its dimension in every latent variable built over this vocabulary.
class Vocabulary {
public:
    Vocabulary() = default;
    explicit Vocabulary(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t index) const { return labels_.at(index); }

    std::optional<std::size_t> index_of(const std::string& label) const;
    bool contains(const std::string& label) const { return index_.count(label) != 0; }

    bool operator==(const Vocabulary& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
};

enum class LvKind { observation, prediction };

/// A point in the conceptual space: one component per vocabulary entry.
struct LatentVariable {
    std::vector<double> values;
    int day = 0;
    std::optional<std::string> context;
    LvKind kind = LvKind::observation;

    std::size_t size() const { return values.size(); }
    bool operator==(const LatentVariable&) const = default;
};

/// Binary presence encoding of a list of detected labels. Labels outside the
/// vocabulary are dropped; their count is written to `skipped` when given.
LatentVariable encode(std::span<const std::string> detections, const Vocabulary& vocab, int day,
                      std::optional<std::string> context = std::nullopt,
                      std::size_t* skipped = nullptr);

/// Labels whose mask component is strictly above `threshold`.
LabelSet decode(std::span<const double> mask, double threshold, const Vocabulary& vocab);

}  // namespace ctxmem
