#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ctxmem/errors.hpp"
#include "ctxmem/perception.hpp"

using namespace ctxmem;

namespace {

const Vocabulary kAB({"A", "B"});

NcmClassifier two_class(Feature a, Feature b)
{
    std::vector<std::pair<Feature, std::string>> s{{std::move(a), "A"}, {std::move(b), "B"}};
    return train_ncm(s, kAB);
}

Environment kitchen_with(std::initializer_list<const char*> items)
{
    Environment env;
    env.add_context("kitchen");
    int n = 0;
    for (const char* item : items) {
        env.place("kitchen", std::string(item) + "#" + std::to_string(++n), item);
    }
    return env;
}

}  // namespace

TEST_CASE("NCM means are sample means")
{
    std::vector<std::pair<Feature, std::string>> s{{{0, 0}, "A"}, {{2, 0}, "A"}};
    auto clf = train_ncm(s, kAB);
    REQUIRE(clf.classes().size() == 1);
    CHECK(clf.mean_of("A") == Feature{1, 0});
    CHECK(clf.classes()[0].count == 2);

    auto one_each = two_class({0.25, 3}, {-1, 4});
    CHECK(one_each.mean_of("A") == Feature{0.25, 3});
    CHECK(one_each.mean_of("B") == Feature{-1, 4});
}

TEST_CASE("NCM training errors")
{
    std::vector<std::pair<Feature, std::string>> none;
    CHECK_THROWS_AS(train_ncm(none, kAB), InvalidInputError);
    std::vector<std::pair<Feature, std::string>> unknown{{{0}, "C"}};
    CHECK_THROWS_AS(train_ncm(unknown, kAB), NotFoundError);
    std::vector<std::pair<Feature, std::string>> ragged{{{0}, "A"}, {{0, 1}, "B"}};
    CHECK_THROWS_AS(train_ncm(ragged, kAB), DimensionError);
}

TEST_CASE("NCM picks the nearest mean, lowest index on ties")
{
    auto clf = two_class({0, 0}, {1, 1});
    CHECK(clf.classify(Feature{0.1, 0}) == "A");
    CHECK(clf.classify(Feature{0.9, 1.2}) == "B");
    CHECK(clf.classify(Feature{0.5, 0.5}) == "A");
}

TEST_CASE("NCM recovers true means (law of large numbers)")
{
    const Vocabulary vocab({"p", "q", "r"});
    auto model = SyntheticFeatureModel::make(vocab, 32, 0.1, 1.0);
    Rng rng(99);
    auto clf = train_ncm(draw_training_set(model, 1000, rng), vocab);
    const double bound = 4.0 * model.sigma() / std::sqrt(1000.0);
    for (std::size_t c = 0; c < vocab.size(); ++c) {
        const auto& est = clf.mean_of(vocab.label(c));
        for (std::size_t i = 0; i < est.size(); ++i) {
            REQUIRE(std::abs(est[i] - model.true_mean(c)[i]) < bound);
        }
    }
}

TEST_CASE("property: NCM decision is translation invariant")
{
    const Vocabulary vocab({"p", "q", "r", "s"});
    auto model = SyntheticFeatureModel::make(vocab, 8, 0.4, 1.0);
    Rng rng(5);
    auto samples = draw_training_set(model, 5, rng);
    auto clf = train_ncm(samples, vocab);

    std::normal_distribution<double> shift_dist(0.0, 3.0);
    Feature shift(8);
    for (auto& s : shift) s = shift_dist(rng);
    for (auto& [f, label] : samples) {
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += shift[i];
    }
    auto shifted = train_ncm(samples, vocab);

    for (int n = 0; n < 300; ++n) {
        auto f = model.sample(static_cast<std::size_t>(n % 4), rng);
        auto g = f;
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += shift[i];
        REQUIRE(clf.classify(f) == shifted.classify(g));
    }
}

TEST_CASE("noise-free sensing returns ground truth")
{
    const Vocabulary vocab({"milk", "cereal", "apple"});
    auto model = SyntheticFeatureModel::make(vocab);
    Rng rng(3);
    auto clf = train_ncm(draw_training_set(model, 10, rng), vocab);
    auto env = kitchen_with({"milk", "cereal"});
    for (int visit = 0; visit < 50; ++visit) {
        auto dets = sense_context(env, "kitchen", NoiseProfile::none(), model, clf, rng);
        REQUIRE(dets.size() == 2);
        for (const auto& d : dets) {
            REQUIRE(d.ground_truth_label);
            REQUIRE(d.predicted_label == *d.ground_truth_label);
        }
        auto labels = predicted_labels(dets);
        REQUIRE(LabelSet(labels.begin(), labels.end()) == LabelSet{"milk", "cereal"});
    }
}

TEST_CASE("certain miss detection yields nothing")
{
    const Vocabulary vocab({"milk", "cereal"});
    auto model = SyntheticFeatureModel::make(vocab);
    Rng rng(1);
    auto clf = train_ncm(draw_training_set(model, 5, rng), vocab);
    auto env = kitchen_with({"milk", "cereal"});
    NoiseProfile noise{1.0, 0.0, 0.0};
    CHECK(sense_context(env, "kitchen", noise, model, clf, rng).empty());
    CHECK_THROWS_AS(sense_context(env, "attic", noise, model, clf, rng), NotFoundError);
}

TEST_CASE("detection frequency under p_miss = 0.3 (binomial, 10000 visits)")
{
    const Vocabulary vocab({"milk", "cereal"});
    auto model = SyntheticFeatureModel::make(vocab);
    Rng rng(2024);
    auto clf = train_ncm(draw_training_set(model, 5, rng), vocab);
    auto env = kitchen_with({"milk"});
    NoiseProfile noise{0.3, 0.0, 0.0};
    int hits = 0;
    for (int v = 0; v < 10000; ++v) {
        hits += static_cast<int>(sense_context(env, "kitchen", noise, model, clf, rng).size());
    }
    CHECK(std::abs(hits / 10000.0 - 0.7) <= 0.02);
}

TEST_CASE("misclassification is realised in feature space")
{
    const Vocabulary vocab({"milk", "cereal", "apple"});
    auto model = SyntheticFeatureModel::make(vocab);
    Rng rng(8);
    auto clf = train_ncm(draw_training_set(model, 10, rng), vocab);
    auto env = kitchen_with({"milk"});
    NoiseProfile noise{0.0, 1.0, 0.0};
    for (int v = 0; v < 100; ++v) {
        auto dets = sense_context(env, "kitchen", noise, model, clf, rng);
        REQUIRE(dets.size() == 1);
        REQUIRE(dets[0].predicted_label != "milk");
        REQUIRE(dets[0].ground_truth_label == "milk");
    }
}

TEST_CASE("spurious detections follow the Poisson rate")
{
    const Vocabulary vocab({"milk", "cereal", "apple"});
    auto model = SyntheticFeatureModel::make(vocab);
    Rng rng(77);
    auto clf = train_ncm(draw_training_set(model, 10, rng), vocab);
    auto env = kitchen_with({});
    NoiseProfile noise{0.0, 0.0, 0.65};
    long total = 0;
    for (int v = 0; v < 20000; ++v) {
        auto dets = sense_context(env, "kitchen", noise, model, clf, rng);
        for (const auto& d : dets) REQUIRE_FALSE(d.ground_truth_label);
        total += static_cast<long>(dets.size());
    }
    // sd of the mean = sqrt(0.65 / 20000) ~ 0.0057
    CHECK(std::abs(total / 20000.0 - 0.65) < 0.03);
}

TEST_CASE("sensing is reproducible from the generator state")
{
    const Vocabulary vocab({"milk", "cereal", "apple"});
    auto model = SyntheticFeatureModel::make(vocab);
    Rng train(4);
    auto clf = train_ncm(draw_training_set(model, 10, train), vocab);
    auto env = kitchen_with({"milk", "apple", "cereal"});
    Rng a(42), b(42);
    for (int v = 0; v < 20; ++v) {
        auto da = sense_context(env, "kitchen", NoiseProfile{}, model, clf, a);
        auto db = sense_context(env, "kitchen", NoiseProfile{}, model, clf, b);
        REQUIRE(da.size() == db.size());
        for (std::size_t i = 0; i < da.size(); ++i) {
            REQUIRE(da[i].feature == db[i].feature);
            REQUIRE(da[i].predicted_label == db[i].predicted_label);
        }
    }
}

TEST_CASE("noise profile validation")
{
    CHECK_THROWS_AS((NoiseProfile{1.5, 0, 0}.validate()), InvalidInputError);
    CHECK_THROWS_AS((NoiseProfile{0, -0.1, 0}.validate()), InvalidInputError);
    CHECK_THROWS_AS((NoiseProfile{0, 0, -1}.validate()), InvalidInputError);
    const NoiseProfile def;
    CHECK(def.p_miss_detect + (1 - def.p_miss_detect) * def.p_misclassify == doctest::Approx(0.44));
    CHECK(def.spurious_rate == doctest::Approx(35.0 / 54.0));
}
