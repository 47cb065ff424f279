#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ctxmem/errors.hpp"
#include "ctxmem/reasoner.hpp"

using namespace ctxmem;

using Vec = std::vector<double>;

namespace {

const Vocabulary kVocab({"milk", "cereal", "apple"});

LatentVariable obs(Vec values, int day = 1)
{
    return LatentVariable{std::move(values), day, std::nullopt, LvKind::observation};
}

SustainNetwork net_of(std::vector<Cluster> clusters, Vec lambda = {1, 1, 1})
{
    return SustainNetwork({}, std::move(lambda), std::move(clusters));
}

}  // namespace

TEST_CASE("prediction LV: single cluster, absent item")
{
    auto net = net_of({{{1, 1, 1}, "kitchen", false}});
    auto v = prediction_lv(obs({0, 1, 1}), net);
    CHECK(v.values[0] == doctest::Approx(0.36787944117144233).epsilon(1e-12));
    CHECK(v.values[1] == 0.0);
    CHECK(v.values[2] == 0.0);
    CHECK(v.source_day == 1);
}

TEST_CASE("prediction LV: present items are clamped to zero whatever the clusters")
{
    auto net = net_of({{{1, 0, 0.5}, "a", false}, {{0, 0, 1}, "b", false}}, {3, 0.2, 7});
    auto v = prediction_lv(obs({1, 1, 1}), net);
    CHECK(v.values == Vec{0, 0, 0});
}

TEST_CASE("prediction LV: averaging over two clusters")
{
    auto net = net_of({{{1, 0, 0}, "a", false}, {{0, 0, 0}, "b", false}});
    auto v = prediction_lv(obs({0, 0, 0}), net);
    CHECK(v.values[0] == doctest::Approx(0.6839397205857212).epsilon(1e-12));
    // no cluster holds the item: e^0 averaged = 1
    CHECK(v.values[1] == 1.0);
}

TEST_CASE("prediction LV ignores storage clusters and needs a regular one")
{
    auto net = net_of({{{1, 0, 0}, "kitchen", false}, {{0, 1, 1}, "storage", true}});
    auto v = prediction_lv(obs({0, 0, 0}), net);
    CHECK(v.values[0] == doctest::Approx(std::exp(-1.0)));
    CHECK(v.values[1] == 1.0);

    auto storage_only = net_of({{{0, 1, 1}, "storage", true}});
    CHECK_THROWS_AS(prediction_lv(obs({0, 0, 0}), storage_only), StateError);
    CHECK_THROWS_AS(prediction_lv(obs({0, 0}), net), DimensionError);
}

TEST_CASE("window aggregation is a per-dimension product")
{
    std::vector<PredictionLV> vs{{{0.5, 0.9, 0.0}, 1}, {{0.8, 1.0, 0.3}, 2}};
    auto out = aggregate_window(vs);
    CHECK(out[0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(out[1] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(out[2] == 0.0);

    std::vector<PredictionLV> one{{{0.25, 0.0, 1.0}, 1}};
    auto id = aggregate_window(one);
    CHECK(id[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(id[1] == 0.0);
    CHECK(id[2] == 1.0);

    CHECK_THROWS_AS(aggregate_window(std::vector<PredictionLV>{}), InvalidInputError);
    std::vector<PredictionLV> ragged{{{0.1}, 1}, {{0.1, 0.2}, 1}};
    CHECK_THROWS_AS(aggregate_window(ragged), DimensionError);
}

TEST_CASE("long products stay positive instead of underflowing")
{
    std::vector<PredictionLV> vs(1000, PredictionLV{{0.3, 0.0}, 1});
    auto out = aggregate_window(vs);
    CHECK(out[0] > 0.0);
    CHECK(out[1] == 0.0);
}

TEST_CASE("decode_missing applies the household-item mask")
{
    auto net = net_of({{{1, 0.4, 0}, "kitchen", false}, {{0, 0, 1}, "storage", true}});
    CHECK(decode_missing(Vec{0.0, 0.3, 0.3}, net, kVocab).empty());
    // cereal: 0.4 < 0.5, apple: only a storage cluster holds it
    CHECK(decode_missing(Vec{0.3, 0.3, 0.3}, net, kVocab) == LabelSet{"milk"});
    CHECK(decode_missing(Vec{0.3, 0.3, 0.3}, net, kVocab, 0.4) == LabelSet{"milk", "cereal"});
    CHECK_THROWS_AS(decode_missing(Vec{0.3}, net, kVocab), DimensionError);
}

TEST_CASE("observed set is a union over the window")
{
    std::vector<LatentVariable> none{obs({0, 0, 0}), obs({0, 0, 0})};
    CHECK(observed_set(none, kVocab).empty());
    std::vector<LatentVariable> milk{obs({1, 0, 0})};
    CHECK(observed_set(milk, kVocab) == LabelSet{"milk"});
    std::vector<LatentVariable> several{obs({1, 0, 0}), obs({0, 0, 1}), obs({1, 0, 0})};
    CHECK(observed_set(several, kVocab) == LabelSet{"milk", "apple"});
}

TEST_CASE("storage exclusion")
{
    auto split = apply_storage({"milk", "cereal"}, {"cereal"});
    CHECK(split.missing == LabelSet{"milk"});
    CHECK(split.storage_items == LabelSet{"cereal"});

    split = apply_storage({"milk", "cereal"}, {});
    CHECK(split.missing == LabelSet{"milk", "cereal"});
    CHECK(split.storage_items.empty());

    split = apply_storage({}, {"honey"});
    CHECK(split.missing.empty());
    CHECK(split.storage_items.empty());
}

TEST_CASE("missing list update follows the week-one trajectory")
{
    MissingList m{{"cereal", "milk", "stapler", "keyboard"}};
    auto next = update_missing_list(m, {"cereal"}, {"milk", "stapler", "keyboard"});
    CHECK(next.items == LabelSet{"cereal"});

    CHECK(update_missing_list({}, {"apple"}, {}).items == LabelSet{"apple"});
    CHECK(update_missing_list(MissingList{{"x"}}, {}, {"x"}).items.empty());

    // idempotent for fixed (P, O)
    const LabelSet p{"apple", "honey"}, o{"milk"};
    auto once = update_missing_list(MissingList{{"milk", "cereal"}}, p, o);
    CHECK(update_missing_list(once, p, o) == once);
}

TEST_CASE("user list diff and reset")
{
    MissingList m{{"cereal", "milk", "apple"}};
    CHECK(diff_with_user_list(m, {"banana", "mouse"}) == LabelSet{"cereal", "milk", "apple"});
    CHECK(diff_with_user_list(m, {"cereal", "milk", "apple", "tea"}).empty());
    CHECK(diff_with_user_list(m, {}) == m.items);

    CHECK(reset_list(MissingList{{"cereal", "milk"}}).items.empty());
    CHECK(reset_list({}).items.empty());
    auto after_reset = update_missing_list(reset_list(m), {"honey"}, {"milk"});
    CHECK(after_reset.items == LabelSet{"honey"});
}

TEST_CASE("evaluate_window wires the cycle together")
{
    auto net = net_of({{{1, 1, 0}, "kitchen", false}, {{0, 0, 1}, "office", false}});
    MissingList m{{"apple"}};
    std::vector<LatentVariable> window{obs({1, 0, 0}, 1), obs({0, 0, 1}, 2)};
    auto r = evaluate_window(window, {}, 2, net, kVocab, m);
    CHECK(r.window_end_day == 2);
    CHECK(r.observed == LabelSet{"milk", "apple"});
    CHECK(r.predicted == LabelSet{"cereal"});
    CHECK(r.missing_list == LabelSet{"cereal"});
    CHECK(m.items == LabelSet{"cereal"});

    auto with_storage = evaluate_window(window, {"cereal"}, 4, net, kVocab, m);
    CHECK(with_storage.predicted.empty());
    CHECK(with_storage.storage_items == LabelSet{"cereal"});

    MissingList untouched{{"honey"}};
    auto empty = evaluate_window({}, {}, 6, net, kVocab, untouched);
    CHECK(empty.predicted.empty());
    CHECK(untouched.items == LabelSet{"honey"});
}

TEST_CASE("property: prediction LVs lie in [0,1] and vanish exactly on present items")
{
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0), lam(0.05, 6.0);
    std::bernoulli_distribution bit(0.5);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t d = 6;
        std::vector<Cluster> clusters;
        for (int k = 0; k < 1 + trial % 5; ++k) {
            Vec c(d);
            for (auto& v : c) v = unit(rng);
            clusters.push_back({c, "c" + std::to_string(k), false});
        }
        Vec lambda(d);
        for (auto& l : lambda) l = lam(rng);
        auto net = net_of(clusters, lambda);
        Vec x(d);
        for (auto& v : x) v = bit(rng) ? 1.0 : 0.0;
        auto v = prediction_lv(obs(x), net);
        for (std::size_t j = 0; j < d; ++j) {
            REQUIRE(v.values[j] >= 0.0);
            REQUIRE(v.values[j] <= 1.0);
            REQUIRE((v.values[j] == 0.0) == (x[j] > 0.0));
        }
    }
}
