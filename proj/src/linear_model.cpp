#include "asptk/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "asptk/problems.hpp"

namespace asp {

std::size_t weighted_draw(Rng& rng, const std::vector<double>& weights) {
    if (weights.empty()) throw Error("weighted_draw: empty candidate set");
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) return static_cast<std::size_t>(next_below(rng, weights.size()));
    const double r = next_double(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        acc += weights[i];
        if (r < acc) return i;
    }
    return weights.size() - 1;
}

std::pair<double, double> class_weights(std::size_t n_pos, std::size_t n_neg) {
    if (n_pos == 0 || n_neg == 0) throw BadInput("empty class");
    return {static_cast<double>(n_neg) / static_cast<double>(n_pos), 1.0};
}

double hinge_objective(const LinearModel& model, const std::vector<TrainingExample>& data,
                       double r_plus, double r_minus) {
    double obj = 0.0;
    for (double wi : model.w) obj += 0.5 * wi * wi;
    for (const auto& ex : data) {
        const double y = ex.label == 1 ? 1.0 : -1.0;
        double score = model.b;
        for (std::size_t k = 0; k < ex.features.size(); ++k) score += model.w[k] * ex.features[k];
        const double slack = std::max(0.0, 1.0 - y * score);
        obj += (ex.label == 1 ? r_plus : r_minus) * slack;
    }
    return obj;
}

LinearModel train_svm(const std::vector<TrainingExample>& data, const TrainConfig& config) {
    if (data.empty()) throw BadInput("empty training set");
    if (config.r_plus <= 0.0 || config.r_minus <= 0.0) throw BadInput("penalties must be positive");
    if (config.epochs < 1) throw BadInput("epochs must be >= 1");
    const std::size_t dim = data.front().features.size();
    if (dim == 0) throw BadInput("empty feature vector");
    std::size_t n_pos = 0;
    for (const auto& ex : data) {
        if (ex.features.size() != dim) throw BadInput("inconsistent feature dimension");
        for (double f : ex.features) {
            if (!std::isfinite(f)) throw BadInput("non-finite feature value");
        }
        if (ex.label != 0 && ex.label != 1) throw BadInput("labels must be 0/1");
        n_pos += static_cast<std::size_t>(ex.label);
    }
    if (n_pos == 0 || n_pos == data.size()) throw BadInput("training data needs both classes");

    const std::size_t n = data.size();
    LinearModel cur{std::vector<double>(dim, 0.0), 0.0};
    LinearModel best = cur;
    double best_obj = std::numeric_limits<double>::infinity();

    Rng rng = make_stream(config.seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    std::size_t t = 0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        // Seeded Fisher-Yates; the visiting order is the only randomness.
        for (std::size_t i = n - 1; i > 0; --i) {
            std::swap(order[i], order[next_below(rng, i + 1)]);
        }
        for (std::size_t idx : order) {
            const auto& ex = data[idx];
            const double eta = config.eta0 / (1.0 + config.lambda * static_cast<double>(t));
            ++t;
            const double y = ex.label == 1 ? 1.0 : -1.0;
            const double r = ex.label == 1 ? config.r_plus : config.r_minus;
            double score = cur.b;
            for (std::size_t k = 0; k < dim; ++k) score += cur.w[k] * ex.features[k];
            // Per-sample subgradient of (1/2n)||w||^2 + r_i * hinge_i.
            const double shrink = 1.0 - eta / static_cast<double>(n);
            for (double& wk : cur.w) wk *= shrink;
            if (y * score < 1.0) {
                const double step = eta * r * y;
                for (std::size_t k = 0; k < dim; ++k) cur.w[k] += step * ex.features[k];
                cur.b += step;
            }
        }
        const double obj = hinge_objective(cur, data, config.r_plus, config.r_minus);
        if (obj < best_obj) {
            best_obj = obj;
            best = cur;
        }
    }

    double norm_sq = 0.0;
    for (double wk : best.w) norm_sq += wk * wk;
    if (norm_sq == 0.0) throw NumericalFailure("training converged to a zero weight vector");
    return best;
}

double decision_distance(const LinearModel& model, std::span<const double> f) {
    if (f.size() != model.w.size()) throw BadInput("feature dimension mismatch");
    double norm_sq = 0.0, score = model.b;
    for (std::size_t k = 0; k < f.size(); ++k) {
        norm_sq += model.w[k] * model.w[k];
        score += model.w[k] * f[k];
    }
    if (norm_sq == 0.0) throw BadInput("degenerate model: ||w|| = 0");
    return score / std::sqrt(norm_sq);
}

double calibrate(double d, const Calibration& cal) {
    if (!(cal.beta0 > 0.0)) throw BadInput("calibration requires beta0 > 0");
    const double z = cal.beta0 * d + cal.beta1;
    // exp may overflow to +inf for very negative z; 1/(1+inf) == 0, no NaN.
    return 1.0 / (1.0 + std::exp(-z));
}

std::vector<double> predict(const LinearModel& model, const Calibration& cal,
                            std::span<const double> features, std::size_t n_rows) {
    const std::size_t dim = model.w.size();
    if (features.size() != n_rows * dim) throw BadInput("feature matrix shape mismatch");
    // Hoist the norm out of the per-row distance.
    double norm_sq = 0.0;
    for (double wk : model.w) norm_sq += wk * wk;
    if (norm_sq == 0.0) throw BadInput("degenerate model: ||w|| = 0");
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    if (!(cal.beta0 > 0.0)) throw BadInput("calibration requires beta0 > 0");
    std::vector<double> p(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) {
        const double* row = features.data() + r * dim;
        double score = model.b;
        for (std::size_t k = 0; k < dim; ++k) score += model.w[k] * row[k];
        const double z = cal.beta0 * (score * inv_norm) + cal.beta1;
        p[r] = 1.0 / (1.0 + std::exp(-z));
    }
    return p;
}

void save_model(const ModelFile& m, const std::string& path) {
    if (m.feature_names.size() != m.model.w.size())
        throw BadInput("feature name count does not match weight vector");
    nlohmann::json j;
    j["feature_names"] = m.feature_names;
    j["w"] = m.model.w;
    j["b"] = m.model.b;
    j["beta0"] = m.cal.beta0;
    j["beta1"] = m.cal.beta1;
    j["problem"] = to_string(m.problem);
    std::ofstream out(path);
    if (!out) throw BadInput("cannot write model file: " + path);
    out << j.dump(2) << '\n';
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw BadInput("malformed model JSON in " + path + ": " + e.what());
    }
    ModelFile m;
    try {
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        m.model.w = j.at("w").get<std::vector<double>>();
        m.model.b = j.at("b").get<double>();
        m.cal.beta0 = j.at("beta0").get<double>();
        m.cal.beta1 = j.at("beta1").get<double>();
        m.problem = problem_kind_from_string(j.at("problem").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw BadInput("model schema mismatch in " + path + ": " + e.what());
    }
    if (m.model.w.size() != m.feature_names.size())
        throw BadInput("model weight/name count mismatch in " + path);
    if (m.model.w.size() != feature_dim(m.problem))
        throw BadInput("model dimension does not match problem in " + path);
    if (!std::isfinite(m.model.b) || !(m.cal.beta0 > 0.0) || !std::isfinite(m.cal.beta1))
        throw BadInput("non-finite or invalid model parameters in " + path);
    for (double wk : m.model.w) {
        if (!std::isfinite(wk)) throw BadInput("non-finite model weight in " + path);
    }
    return m;
}

} // namespace asp
