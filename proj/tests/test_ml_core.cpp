#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "asptk/linear_model.hpp"
#include "asptk/problems.hpp"
#include "helpers.hpp"

using namespace asp;

namespace {

struct Blobs {
    std::vector<TrainingExample> data;
};

// Two 2-D Gaussian blobs separable (mostly) by the x axis.
Blobs gaussian_blobs(std::size_t per_class, std::uint64_t seed) {
    Blobs b;
    Rng rng = make_stream(seed, 0xb10b5ULL);
    for (std::size_t i = 0; i < per_class; ++i) {
        b.data.push_back({{-2.0 + testutil::normal(rng), testutil::normal(rng)}, 0});
        b.data.push_back({{+2.0 + testutil::normal(rng), testutil::normal(rng)}, 1});
    }
    return b;
}

double accuracy(const LinearModel& m, const std::vector<TrainingExample>& data) {
    std::size_t hit = 0;
    for (const auto& ex : data) {
        double s = m.b;
        for (std::size_t k = 0; k < ex.features.size(); ++k) s += m.w[k] * ex.features[k];
        hit += static_cast<std::size_t>((s >= 0.0 ? 1 : 0) == ex.label);
    }
    return static_cast<double>(hit) / static_cast<double>(data.size());
}

// Exhaustive oracle: best achievable linear accuracy over a dense grid of
// directions, with the bias swept over all projection midpoints.
double grid_search_accuracy(const std::vector<TrainingExample>& data) {
    double best = 0.0;
    for (int step = 0; step < 360; ++step) {
        const double theta = step * 3.141592653589793 / 180.0;
        const double wx = std::cos(theta), wy = std::sin(theta);
        std::vector<double> proj;
        proj.reserve(data.size());
        for (const auto& ex : data) proj.push_back(wx * ex.features[0] + wy * ex.features[1]);
        std::vector<double> cuts = proj;
        std::sort(cuts.begin(), cuts.end());
        cuts.push_back(cuts.back() + 1.0);
        for (double cut : cuts) {
            std::size_t hit = 0;
            for (std::size_t i = 0; i < data.size(); ++i) {
                hit += static_cast<std::size_t>((proj[i] >= cut ? 1 : 0) == data[i].label);
            }
            best = std::max(best, static_cast<double>(hit) / static_cast<double>(data.size()));
        }
    }
    return best;
}

std::size_t misclassified_positives(const LinearModel& m,
                                    const std::vector<TrainingExample>& data) {
    std::size_t miss = 0;
    for (const auto& ex : data) {
        if (ex.label != 1) continue;
        double s = m.b;
        for (std::size_t k = 0; k < ex.features.size(); ++k) s += m.w[k] * ex.features[k];
        if (s < 0.0) ++miss;
    }
    return miss;
}

} // namespace

TEST_SUITE("ml_core") {

TEST_CASE("class weights follow the inverse class ratio") {
    CHECK(class_weights(10, 90) == std::pair<double, double>{9.0, 1.0});
    CHECK(class_weights(50, 50) == std::pair<double, double>{1.0, 1.0});
    CHECK(class_weights(1, 1) == std::pair<double, double>{1.0, 1.0});
    CHECK_THROWS_AS(class_weights(0, 5), BadInput);
    CHECK_THROWS_AS(class_weights(5, 0), BadInput);
}

TEST_CASE("decision distance") {
    CHECK(decision_distance({{1.0, 0.0}, 0.0}, std::vector<double>{2.0, 5.0}) ==
          doctest::Approx(2.0));
    CHECK(decision_distance({{3.0, 4.0}, 0.0}, std::vector<double>{1.0, 1.0}) ==
          doctest::Approx(1.4));
    CHECK(decision_distance({{1.0}, -1.0}, std::vector<double>{1.0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(decision_distance({{0.0, 0.0}, 1.0}, std::vector<double>{1.0, 2.0}), BadInput);
    CHECK_THROWS_AS(decision_distance({{1.0}, 0.0}, std::vector<double>{1.0, 2.0}), BadInput);
}

TEST_CASE("decision distance is invariant under positive rescaling") {
    Rng rng = make_stream(7, 0xd15ULL);
    for (int trial = 0; trial < 100; ++trial) {
        LinearModel m;
        const std::size_t dim = 1 + next_below(rng, 6);
        std::vector<double> f(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            m.w.push_back(next_double(rng) * 4.0 - 2.0);
            f[k] = next_double(rng) * 4.0 - 2.0;
        }
        m.w[0] += 0.5; // keep ||w|| > 0
        m.b = next_double(rng) - 0.5;
        const double c = 0.01 + next_double(rng) * 50.0;
        LinearModel scaled = m;
        for (double& w : scaled.w) w *= c;
        scaled.b *= c;
        CHECK(decision_distance(scaled, f) ==
              doctest::Approx(decision_distance(m, f)).epsilon(1e-10));
    }
}

TEST_CASE("logistic calibration") {
    CHECK(calibrate(0.0, {1.0, 0.0}) == doctest::Approx(0.5));
    CHECK(calibrate(100.0, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(calibrate(0.0, {2.0, 1.0}) == doctest::Approx(0.7310585786300049).epsilon(1e-12));
    CHECK(std::isfinite(calibrate(-1e8, {5.0, 0.0})));
    CHECK(calibrate(-1e8, {5.0, 0.0}) == 0.0);
    CHECK(calibrate(1e8, {5.0, 0.0}) == 1.0);
    CHECK_THROWS_AS(calibrate(0.0, {0.0, 0.0}), BadInput);
    CHECK_THROWS_AS(calibrate(0.0, {-1.0, 0.0}), BadInput);
}

TEST_CASE("calibration is strictly increasing in the distance") {
    // Strict monotonicity holds wherever the logistic is not saturated to an
    // exact 0.0 or 1.0; pick arguments with |beta0*d + beta1| <= 25.
    Rng rng = make_stream(9, 0xca1ULL);
    for (int trial = 0; trial < 200; ++trial) {
        const Calibration cal{0.1 + next_double(rng) * 19.9, next_double(rng) * 10.0 - 5.0};
        const double z1 = next_double(rng) * 49.0 - 25.0;
        const double z2 = z1 + 0.1 + next_double(rng);
        const double d1 = (z1 - cal.beta1) / cal.beta0;
        const double d2 = (z2 - cal.beta1) / cal.beta0;
        CHECK(calibrate(d1, cal) < calibrate(d2, cal));
    }
}

TEST_CASE("training separates a linearly separable pair") {
    const std::vector<TrainingExample> data{{{1.0}, 1}, {{-1.0}, 0}};
    TrainConfig cfg;
    const LinearModel m = train_svm(data, cfg);
    CHECK(m.w[0] * 1.0 + m.b > 0.0);
    CHECK(m.w[0] * -1.0 + m.b < 0.0);
}

TEST_CASE("training is deterministic for a fixed seed") {
    const Blobs b = gaussian_blobs(60, 3);
    TrainConfig cfg;
    cfg.seed = 42;
    const LinearModel m1 = train_svm(b.data, cfg);
    const LinearModel m2 = train_svm(b.data, cfg);
    CHECK(m1.w == m2.w);
    CHECK(m1.b == m2.b);
}

TEST_CASE("training reaches grid-search-level accuracy on gaussian blobs") {
    const Blobs b = gaussian_blobs(100, 11);
    const double reachable = grid_search_accuracy(b.data);
    REQUIRE(reachable >= 0.95); // the blobs are separable at this seed
    TrainConfig cfg;
    const LinearModel m = train_svm(b.data, cfg);
    CHECK(accuracy(m, b.data) >= 0.95);
}

TEST_CASE("training rejects degenerate inputs") {
    TrainConfig cfg;
    CHECK_THROWS_AS(train_svm({}, cfg), BadInput);
    CHECK_THROWS_AS(train_svm({{{1.0}, 1}, {{2.0}, 1}}, cfg), BadInput);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(train_svm({{{inf}, 1}, {{0.0}, 0}}, cfg), BadInput);
    CHECK_THROWS_AS(train_svm({{{1.0}, 1}, {{1.0, 2.0}, 0}}, cfg), BadInput);
}

TEST_CASE("trained model beats the zero-weight baseline on the hinge objective") {
    const Blobs b = gaussian_blobs(80, 17);
    TrainConfig cfg;
    cfg.r_plus = 2.0;
    const LinearModel m = train_svm(b.data, cfg);
    const LinearModel zero{{0.0, 0.0}, 0.0};
    CHECK(hinge_objective(m, b.data, cfg.r_plus, cfg.r_minus) <=
          hinge_objective(zero, b.data, cfg.r_plus, cfg.r_minus));
}

TEST_CASE("raising r_plus weakly reduces misclassified positives") {
    // Imbalanced, overlapping blobs on a fixed seed.
    Blobs b;
    Rng rng = make_stream(23, 0x1313ULL);
    for (int i = 0; i < 30; ++i)
        b.data.push_back({{-0.3 + testutil::normal(rng), testutil::normal(rng)}, 1});
    for (int i = 0; i < 170; ++i)
        b.data.push_back({{0.3 + testutil::normal(rng), testutil::normal(rng)}, 0});
    std::vector<std::size_t> misses;
    for (double rp : {1.0, 2.0, 4.0, 8.0}) {
        TrainConfig cfg;
        cfg.r_plus = rp;
        misses.push_back(misclassified_positives(train_svm(b.data, cfg), b.data));
    }
    CHECK(misses.back() < misses.front());
    for (std::size_t i = 1; i < misses.size(); ++i) CHECK(misses[i] <= misses[i - 1]);
}

TEST_CASE("predict matches the scalar path") {
    const Blobs b = gaussian_blobs(30, 5);
    TrainConfig cfg;
    const LinearModel m = train_svm(b.data, cfg);
    const Calibration cal{1.5, -0.2};

    std::vector<double> flat;
    for (const auto& ex : b.data) flat.insert(flat.end(), ex.features.begin(), ex.features.end());
    const auto p = predict(m, cal, flat, b.data.size());
    REQUIRE(p.size() == b.data.size());
    for (std::size_t i = 0; i < b.data.size(); ++i) {
        CHECK(p[i] ==
              doctest::Approx(calibrate(decision_distance(m, b.data[i].features), cal))
                  .epsilon(1e-14));
    }

    SUBCASE("identical rows produce identical outputs") {
        const std::vector<double> rows{1.0, 2.0, 1.0, 2.0, 1.0, 2.0};
        const auto q = predict(m, cal, rows, 3);
        CHECK(q[0] == q[1]);
        CHECK(q[1] == q[2]);
    }
    SUBCASE("zero rows produce an empty vector") {
        CHECK(predict(m, cal, std::vector<double>{}, 0).empty());
    }
    SUBCASE("rows monotone along w give monotone probabilities") {
        std::vector<double> rows;
        for (int k = 0; k < 5; ++k) {
            rows.push_back(m.w[0] * k);
            rows.push_back(m.w[1] * k);
        }
        const auto q = predict(m, cal, rows, 5);
        for (std::size_t k = 1; k < q.size(); ++k) CHECK(q[k - 1] < q[k]);
    }
}

TEST_CASE("model files round-trip bit-identically") {
    const std::filesystem::path tmp =
        std::filesystem::temp_directory_path() / "asptk_model_test.json";
    ModelFile mf;
    mf.problem = ProblemKind::mwcp;
    mf.feature_names = {"rank_score", "corr_score", "weight", "degree", "clique_ub", "density"};
    mf.model.w = {0.1, -0.2, 1.0 / 3.0, 0.7, -1e-9, 12345.6789};
    mf.model.b = -0.123456789012345;
    mf.cal = {3.14159, -1.25};
    save_model(mf, tmp.string());
    const ModelFile r = load_model(tmp.string());
    CHECK(r.model.w == mf.model.w);
    CHECK(r.model.b == mf.model.b);
    CHECK(r.cal.beta0 == mf.cal.beta0);
    CHECK(r.cal.beta1 == mf.cal.beta1);
    CHECK(r.feature_names == mf.feature_names);
    CHECK(r.problem == mf.problem);
    std::filesystem::remove(tmp);
}

TEST_CASE("model loading validates schema and dimensions") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto bad_dim = dir / "asptk_bad_dim.json";
    {
        std::ofstream out(bad_dim);
        out << R"({"feature_names":["a","b"],"w":[1.0,2.0],"b":0.0,)"
            << R"("beta0":1.0,"beta1":0.0,"problem":"mwcp"})";
    }
    CHECK_THROWS_AS(load_model(bad_dim.string()), BadInput); // mwcp needs 6 features

    const auto truncated = dir / "asptk_truncated.json";
    {
        std::ofstream out(truncated);
        out << R"({"feature_names":["a","b"],"w":[1.0)";
    }
    CHECK_THROWS_AS(load_model(truncated.string()), BadInput);
    std::filesystem::remove(bad_dim);
    std::filesystem::remove(truncated);
}

} // TEST_SUITE
