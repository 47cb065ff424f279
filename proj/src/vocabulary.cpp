#include "ctxmem/vocabulary.hpp"

#include <spdlog/spdlog.h>

#include "ctxmem/errors.hpp"

namespace ctxmem {

Vocabulary::Vocabulary(std::vector<std::string> labels) : labels_(std::move(labels))
{
    if (labels_.empty()) {
        throw InvalidInputError("vocabulary must contain at least one label");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i].empty()) {
            throw InvalidInputError("vocabulary labels must be non-empty");
        }
        if (!index_.emplace(labels_[i], i).second) {
            throw InvalidInputError("duplicate vocabulary label: " + labels_[i]);
        }
    }
}

std::optional<std::size_t> Vocabulary::index_of(const std::string& label) const
{
    auto it = index_.find(label);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

LatentVariable encode(std::span<const std::string> detections, const Vocabulary& vocab, int day,
                      std::optional<std::string> context, std::size_t* skipped)
{
    if (vocab.empty()) {
        throw InvalidInputError("cannot encode over an empty vocabulary");
    }
    LatentVariable lv;
    lv.values.assign(vocab.size(), 0.0);
    lv.day = day;
    lv.context = std::move(context);
    lv.kind = LvKind::observation;

    std::size_t unknown = 0;
    for (const auto& label : detections) {
        if (auto idx = vocab.index_of(label)) {
            lv.values[*idx] = 1.0;
        } else {
            ++unknown;
            spdlog::debug("encode: dropping out-of-vocabulary label '{}'", label);
        }
    }
    if (skipped != nullptr) {
        *skipped = unknown;
    }
    return lv;
}

LabelSet decode(std::span<const double> mask, double threshold, const Vocabulary& vocab)
{
    if (mask.size() != vocab.size()) {
        throw DimensionError("decode: mask has " + std::to_string(mask.size()) +
                             " components, vocabulary has " + std::to_string(vocab.size()));
    }
    if (threshold < 0.0) {
        throw InvalidInputError("decode: threshold must be non-negative");
    }
    LabelSet out;
    for (std::size_t j = 0; j < mask.size(); ++j) {
        if (mask[j] > threshold) {
            out.insert(vocab.label(j));
        }
    }
    return out;
}

}  // namespace ctxmem
