#include "asptk/solution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace asp {

Solution Solution::clique(std::vector<std::uint32_t> vertices) {
    std::sort(vertices.begin(), vertices.end());
    return Solution{ProblemKind::mwcp, std::move(vertices)};
}

Solution Solution::tour(std::vector<std::uint32_t> order) {
    return Solution{ProblemKind::tsp, std::move(order)};
}

Solution Solution::route(std::vector<std::uint32_t> visits) {
    return Solution{ProblemKind::op, std::move(visits)};
}

std::vector<std::uint32_t> canonical_key(const Solution& s) {
    switch (s.kind) {
        case ProblemKind::mwcp: {
            auto key = s.seq;
            std::sort(key.begin(), key.end());
            return key;
        }
        case ProblemKind::tsp: {
            // Rotate so the smallest city leads, then pick the lexicographically
            // smaller of the two directions.
            const auto& t = s.seq;
            const std::size_t n = t.size();
            if (n == 0) return {};
            const std::size_t at = static_cast<std::size_t>(
                std::min_element(t.begin(), t.end()) - t.begin());
            std::vector<std::uint32_t> fwd(n), rev(n);
            for (std::size_t k = 0; k < n; ++k) {
                fwd[k] = t[(at + k) % n];
                rev[k] = t[(at + n - k) % n];
            }
            return std::min(fwd, rev);
        }
        case ProblemKind::op: {
            auto rev = s.seq;
            std::reverse(rev.begin(), rev.end());
            return std::min(s.seq, rev);
        }
    }
    throw Error("unknown solution kind");
}

std::vector<std::size_t> active_vars(const Solution& s, const ProblemInstance& inst) {
    if (s.kind != inst.kind()) throw BadInput("solution/instance kind mismatch");
    const std::uint32_t n = inst.size();
    std::vector<std::size_t> vars;
    switch (s.kind) {
        case ProblemKind::mwcp:
            vars.assign(s.seq.begin(), s.seq.end());
            break;
        case ProblemKind::tsp: {
            vars.reserve(s.seq.size());
            for (std::size_t k = 0; k < s.seq.size(); ++k) {
                const std::uint32_t a = s.seq[k];
                const std::uint32_t b = s.seq[(k + 1) % s.seq.size()];
                vars.push_back(edge_index(a, b, n));
            }
            break;
        }
        case ProblemKind::op: {
            if (s.seq.empty()) break;
            vars.reserve(s.seq.size() + 1);
            std::uint32_t prev = 0;
            for (std::uint32_t v : s.seq) {
                vars.push_back(edge_index(prev, v, n));
                prev = v;
            }
            vars.push_back(edge_index(prev, 0, n));
            break;
        }
    }
    std::sort(vars.begin(), vars.end());
    return vars;
}

void save_solution_json(const Solution& s, double objective, const std::string& path) {
    nlohmann::json j;
    j["problem"] = to_string(s.kind);
    j["vars"] = s.seq;
    j["objective"] = objective;
    std::ofstream out(path);
    if (!out) throw BadInput("cannot write solution file: " + path);
    out << j.dump(2) << '\n';
}

std::pair<Solution, double> load_solution_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open solution file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw BadInput("malformed solution JSON in " + path + ": " + e.what());
    }
    Solution s;
    s.kind = problem_kind_from_string(j.at("problem").get<std::string>());
    s.seq = j.at("vars").get<std::vector<std::uint32_t>>();
    const double obj = j.at("objective").get<double>();
    if (!std::isfinite(obj)) throw BadInput("non-finite objective in " + path);
    return {std::move(s), obj};
}

} // namespace asp
