#include "asptk/stat_features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

namespace asp {

std::vector<std::size_t> ranks(const SamplePool& pool) {
    if (pool.empty()) throw BadInput("empty pool");
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&pool](std::size_t a, std::size_t b) {
        const auto& ea = pool.entry(a);
        const auto& eb = pool.entry(b);
        if (ea.objective != eb.objective) return pool.better(ea.objective, eb.objective);
        return ea.key < eb.key;
    });
    std::vector<std::size_t> rank(pool.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = pos + 1;
    return rank;
}

double ranking_score_raw(const SamplePool& pool, std::size_t var_index) {
    if (pool.empty()) throw BadInput("empty pool");
    if (var_index >= pool.instance().var_count()) throw BadInput("variable index out of range");
    const auto rank = ranks(pool);
    double score = 0.0;
    for (std::size_t k = 0; k < pool.size(); ++k) {
        const auto& act = pool.entry(k).active;
        if (std::binary_search(act.begin(), act.end(), var_index))
            score += 1.0 / static_cast<double>(rank[k]);
    }
    return score;
}

namespace {

std::vector<double> ranking_scores_raw(const SamplePool& pool) {
    const auto rank = ranks(pool);
    std::vector<double> score(pool.instance().var_count(), 0.0);
    for (std::size_t k = 0; k < pool.size(); ++k) {
        const double inv = 1.0 / static_cast<double>(rank[k]);
        for (std::size_t v : pool.entry(k).active) score[v] += inv;
    }
    return score;
}

std::vector<double> correlation_scores_raw(const SamplePool& pool) {
    if (pool.size() < 2) throw BadInput("correlation needs at least 2 pool entries");
    const std::size_t K = pool.size();
    const std::size_t nv = pool.instance().var_count();
    double mean = 0.0;
    for (std::size_t k = 0; k < K; ++k) mean += pool.entry(k).objective;
    mean /= static_cast<double>(K);
    double var_o = 0.0, resid_total = 0.0;
    std::vector<double> count(nv, 0.0), resid_sum(nv, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        const double r = pool.entry(k).objective - mean;
        var_o += r * r;
        resid_total += r;
        for (std::size_t v : pool.entry(k).active) {
            count[v] += 1.0;
            resid_sum[v] += r;
        }
    }
    std::vector<double> score(nv, 0.0);
    if (var_o <= 0.0) return score;
    const double sd_o = std::sqrt(var_o);
    for (std::size_t v = 0; v < nv; ++v) {
        const double c = count[v];
        const double var_s = c - c * c / static_cast<double>(K);
        if (var_s <= 0.0) continue;
        const double cov = resid_sum[v] - (c / static_cast<double>(K)) * resid_total;
        score[v] = cov / (std::sqrt(var_s) * sd_o);
    }
    return score;
}

} // namespace

std::vector<double> ranking_scores_normalized(const SamplePool& pool) {
    auto score = ranking_scores_raw(pool);
    const double mx = score.empty() ? 0.0 : *std::max_element(score.begin(), score.end());
    if (mx <= 0.0) {
        std::fill(score.begin(), score.end(), 0.0);
        return score;
    }
    for (double& s : score) s /= mx;
    return score;
}

double correlation_score(const SamplePool& pool, std::size_t var_index) {
    if (pool.size() < 2) throw BadInput("correlation needs at least 2 pool entries");
    if (var_index >= pool.instance().var_count()) throw BadInput("variable index out of range");
    const std::size_t K = pool.size();
    double mean = 0.0;
    for (std::size_t k = 0; k < K; ++k) mean += pool.entry(k).objective;
    mean /= static_cast<double>(K);
    double var_o = 0.0, resid_total = 0.0, resid_sum = 0.0, cnt = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const double r = pool.entry(k).objective - mean;
        var_o += r * r;
        resid_total += r;
        const auto& act = pool.entry(k).active;
        if (std::binary_search(act.begin(), act.end(), var_index)) {
            cnt += 1.0;
            resid_sum += r;
        }
    }
    if (var_o <= 0.0) return 0.0;
    const double var_s = cnt - cnt * cnt / static_cast<double>(K);
    if (var_s <= 0.0) return 0.0;
    const double cov = resid_sum - (cnt / static_cast<double>(K)) * resid_total;
    return cov / (std::sqrt(var_s) * std::sqrt(var_o));
}

std::vector<double> correlation_scores_normalized(const SamplePool& pool) {
    auto score = correlation_scores_raw(pool);
    double divisor;
    if (pool.sense() == Sense::maximize) {
        divisor = *std::max_element(score.begin(), score.end());
    } else {
        divisor = *std::min_element(score.begin(), score.end());
    }
    if (divisor == 0.0) {
        std::fill(score.begin(), score.end(), 0.0);
        return score;
    }
    for (double& s : score) s /= divisor;
    return score;
}

FeatureMatrix assemble_features(const ProblemInstance& inst, const SamplePool& pool) {
    if (&pool.instance() != &inst) throw BadInput("pool does not belong to this instance");
    if (pool.empty()) throw BadInput("empty pool");
    const ProblemKind kind = inst.kind();
    const std::size_t rows = inst.var_count();
    const std::size_t pcols = problem_feature_count(kind);
    const std::size_t cols = 2 + pcols;

    FeatureMatrix f;
    f.rows = rows;
    f.cols = cols;
    f.names = {"rank_score", "corr_score"};
    for (auto& n : problem_feature_names(kind)) f.names.push_back(n);
    f.data.assign(rows * cols, 0.0);

    const auto rank_col = ranking_scores_normalized(pool);
    const std::vector<double> corr_col = pool.size() >= 2
        ? correlation_scores_normalized(pool)
        : std::vector<double>(rows, 0.0);

    std::vector<double> prob;
    switch (kind) {
        case ProblemKind::mwcp: prob = mwcp_features(inst.graph()); break;
        case ProblemKind::tsp: prob = tsp_edge_features(inst.tsp()); break;
        case ProblemKind::op: prob = op_edge_features(inst.op()); break;
    }

    for (std::size_t r = 0; r < rows; ++r) {
        double* out = f.data.data() + r * cols;
        out[0] = rank_col[r];
        out[1] = corr_col[r];
        for (std::size_t c = 0; c < pcols; ++c) out[2 + c] = prob[r * pcols + c];
    }
    return f;
}

void save_features_csv(const FeatureMatrix& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw BadInput("cannot write features file: " + path);
    for (std::size_t c = 0; c < f.names.size(); ++c) {
        out << (c ? "," : "") << f.names[c];
    }
    out << '\n';
    for (std::size_t r = 0; r < f.rows; ++r) {
        for (std::size_t c = 0; c < f.cols; ++c) {
            out << (c ? "," : "") << nlohmann::json(f.at(r, c)).dump();
        }
        out << '\n';
    }
}

} // namespace asp
