#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "asptk/common.hpp"
#include "asptk/instance.hpp"

namespace asp {

struct TrainingExample {
    std::vector<double> features;
    int label = 0; // {0, 1}
};

struct LinearModel {
    std::vector<double> w;
    double b = 0.0;
};

// Logistic rescaling of decision distances; beta0 > 0 so that a larger
// distance always means a larger probability.
struct Calibration {
    double beta0 = 1.0;
    double beta1 = 0.0;
};

struct TrainConfig {
    double r_plus = 1.0;
    double r_minus = 1.0;
    int epochs = 200;
    double eta0 = 0.1;    // step size eta_t = eta0 / (1 + lambda * t)
    double lambda = 1e-3;
    std::uint64_t seed = 1;
};

// Class-weighted penalties: r_minus = 1, r_plus = n_neg / n_pos.
std::pair<double, double> class_weights(std::size_t n_pos, std::size_t n_neg);

// Deterministic subgradient descent on the class-weighted hinge objective
//   1/2 w'w + r+ * sum_{y=1} xi + r- * sum_{y=0} xi
// with {0,1} labels mapped to {-1,+1} internally. Returns the best iterate
// by full objective over epoch ends.
LinearModel train_svm(const std::vector<TrainingExample>& data, const TrainConfig& config);

// The value the trainer minimizes; exposed for tests and model comparison.
double hinge_objective(const LinearModel& model, const std::vector<TrainingExample>& data,
                       double r_plus, double r_minus);

// Signed distance (w'f + b) / ||w|| from the decision boundary.
double decision_distance(const LinearModel& model, std::span<const double> f);

// 1 / (1 + exp(-(beta0 * d + beta1))), saturating without NaN.
double calibrate(double d, const Calibration& cal);

// Row-wise calibrate(decision_distance(...)) over a row-major matrix.
std::vector<double> predict(const LinearModel& model, const Calibration& cal,
                            std::span<const double> features, std::size_t n_rows);

struct ModelFile {
    LinearModel model;
    Calibration cal;
    std::vector<std::string> feature_names;
    ProblemKind problem = ProblemKind::mwcp;
};

void save_model(const ModelFile& m, const std::string& path);
ModelFile load_model(const std::string& path);

} // namespace asp
