#pragma once

#include <vector>

#include "asptk/common.hpp"

namespace asp {

// |best/opt - 1| * 100.
double primal_gap(double best_obj, double opt_obj);

// Area under the precision-recall curve of scores against binary labels.
// Tied scores are processed as one block with the block-end precision, so
// the result is invariant under permutation of tied items.
double average_precision(const std::vector<double>& scores, const std::vector<int>& labels);

} // namespace asp
