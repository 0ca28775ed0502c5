#include "asptk/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace asp {

double primal_gap(double best_obj, double opt_obj) {
    if (opt_obj == 0.0) throw BadInput("primal gap undefined for zero optimum");
    return std::abs(best_obj / opt_obj - 1.0) * 100.0;
}

double average_precision(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size()) throw BadInput("scores/labels length mismatch");
    if (scores.empty()) throw BadInput("empty score vector");
    std::size_t total_pos = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) throw BadInput("labels must be 0/1");
        if (!std::isfinite(scores[i])) throw BadInput("non-finite score");
        total_pos += static_cast<std::size_t>(labels[i]);
    }
    if (total_pos == 0) throw BadInput("average precision needs at least one positive label");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&scores](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    double ap = 0.0;
    std::size_t seen = 0, tp = 0, i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        std::size_t block_pos = 0;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            block_pos += static_cast<std::size_t>(labels[order[j]]);
            ++j;
        }
        seen += j - i;
        tp += block_pos;
        if (block_pos > 0) {
            ap += static_cast<double>(block_pos) *
                  (static_cast<double>(tp) / static_cast<double>(seen));
        }
        i = j;
    }
    return ap / static_cast<double>(total_pos);
}

} // namespace asp
