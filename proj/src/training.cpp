#include "asptk/training.hpp"

#include <algorithm>

namespace asp {

std::vector<TrainingExample> build_training_set(const std::vector<LabeledInstance>& labeled,
                                                std::size_t m_init, std::uint64_t seed) {
    if (labeled.empty()) throw BadInput("no labeled instances");
    std::vector<TrainingExample> out;
    for (std::size_t idx = 0; idx < labeled.size(); ++idx) {
        const auto& li = labeled[idx];
        const auto check = feasible(li.instance, li.optimum);
        if (!check.ok) throw BadInput("labeled optimum infeasible: " + check.reason);
        const std::size_t m = m_init ? m_init : default_samples(li.instance);
        Rng rng = make_stream(seed, 0x7a11ULL, idx);
        const SamplePool pool = uniform_init(li.instance, m, rng);
        const FeatureMatrix f = assemble_features(li.instance, pool);
        std::vector<int> label(f.rows, 0);
        for (std::size_t v : active_vars(li.optimum, li.instance)) label[v] = 1;
        for (std::size_t r = 0; r < f.rows; ++r) {
            TrainingExample ex;
            ex.features.assign(f.row(r), f.row(r) + f.cols);
            ex.label = label[r];
            out.push_back(std::move(ex));
        }
    }
    return out;
}

Calibration tune_calibration(const LinearModel& model,
                             const std::vector<const ProblemInstance*>& tuning,
                             const TuneConfig& cfg) {
    if (tuning.empty()) throw BadInput("no tuning instances");
    const Sense sense = tuning.front()->sense();
    for (const auto* inst : tuning) {
        if (inst->kind() != tuning.front()->kind()) throw BadInput("mixed tuning problems");
    }
    Rng rng = make_stream(cfg.seed, 0x70eULL);
    Calibration best;
    double best_score = 0.0;
    bool have_best = false;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Calibration cal;
        cal.beta0 = 0.1 + 19.9 * next_double(rng);
        cal.beta1 = -5.0 + 10.0 * next_double(rng);
        double score = 0.0;
        for (std::size_t i = 0; i < tuning.size(); ++i) {
            AspConfig asp;
            asp.iterations = cfg.iterations;
            asp.samples = cfg.samples;
            asp.seed = splitmix64(cfg.seed + 0x9000u + i);
            asp.threads = cfg.threads;
            score += asp_run(*tuning[i], model, cal, asp).best_objective;
        }
        score /= static_cast<double>(tuning.size());
        const bool better = sense == Sense::maximize ? score > best_score : score < best_score;
        if (!have_best || better) {
            best = cal;
            best_score = score;
            have_best = true;
        }
    }
    return best;
}

} // namespace asp
