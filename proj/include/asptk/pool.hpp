#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "asptk/problems.hpp"
#include "asptk/solution.hpp"

namespace asp {

struct PoolEntry {
    Solution solution;
    double objective = 0.0;
    std::vector<std::uint32_t> key;   // canonical encoding, used for dedup and tie-breaks
    std::vector<std::size_t> active;  // ascending decision-variable indices
};

// Bounded set of unique feasible solutions; the source of the ranking and
// correlation features. Mutation goes through try_insert (the replacement
// policy of the ASP main loop); the first `pinned_count` entries are never
// evicted.
class SamplePool {
public:
    SamplePool(const ProblemInstance& inst, std::size_t capacity);

    const ProblemInstance& instance() const { return *inst_; }
    Sense sense() const { return inst_->sense(); }
    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const PoolEntry& entry(std::size_t k) const { return entries_[k]; }

    std::size_t pinned_count() const { return pinned_; }
    void set_pinned_count(std::size_t count);

    bool contains(const std::vector<std::uint32_t>& key) const { return keys_.count(key) != 0; }

    // true iff a is strictly better than b under the pool's sense.
    bool better(double a, double b) const {
        return sense() == Sense::maximize ? a > b : a < b;
    }

    // Insert below capacity, else replace the worst non-pinned entry when the
    // candidate is unique and strictly better. Returns whether the pool changed.
    bool try_insert(Solution candidate, double objective);

    const PoolEntry* best() const;

private:
    const ProblemInstance* inst_;
    std::size_t capacity_;
    std::size_t pinned_ = 0;
    std::vector<PoolEntry> entries_;
    std::set<std::vector<std::uint32_t>> keys_;
};

} // namespace asp
