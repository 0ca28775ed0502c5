#include "asptk/pool.hpp"

namespace asp {

SamplePool::SamplePool(const ProblemInstance& inst, std::size_t capacity)
    : inst_(&inst), capacity_(capacity) {
    if (capacity_ == 0) throw BadInput("pool capacity must be >= 1");
}

void SamplePool::set_pinned_count(std::size_t count) {
    if (count > entries_.size()) throw BadInput("pinned count exceeds pool size");
    pinned_ = count;
}

bool SamplePool::try_insert(Solution candidate, double objective) {
    if (candidate.kind != inst_->kind()) throw BadInput("candidate kind mismatch");
    auto key = canonical_key(candidate);
    if (keys_.count(key)) return false;
    if (entries_.size() < capacity_) {
        PoolEntry e{std::move(candidate), objective, key, {}};
        e.active = active_vars(e.solution, *inst_);
        keys_.insert(std::move(key));
        entries_.push_back(std::move(e));
        return true;
    }
    // Replace the worst non-pinned entry, ties resolved toward the larger
    // canonical key so the choice is deterministic.
    std::size_t worst = entries_.size();
    for (std::size_t k = pinned_; k < entries_.size(); ++k) {
        if (worst == entries_.size()) {
            worst = k;
            continue;
        }
        const double wo = entries_[worst].objective;
        const double ko = entries_[k].objective;
        if (better(wo, ko) || (wo == ko && entries_[k].key > entries_[worst].key)) worst = k;
    }
    if (worst == entries_.size()) return false; // everything pinned
    if (!better(objective, entries_[worst].objective)) return false;
    keys_.erase(entries_[worst].key);
    PoolEntry e{std::move(candidate), objective, key, {}};
    e.active = active_vars(e.solution, *inst_);
    keys_.insert(std::move(key));
    entries_[worst] = std::move(e);
    return true;
}

const PoolEntry* SamplePool::best() const {
    const PoolEntry* best = nullptr;
    for (const auto& e : entries_) {
        if (!best || better(e.objective, best->objective)) best = &e;
    }
    return best;
}

} // namespace asp
