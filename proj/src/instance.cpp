#include "asptk/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace asp {

std::string to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::mwcp: return "mwcp";
        case ProblemKind::tsp: return "tsp";
        case ProblemKind::op: return "op";
    }
    throw Error("unknown problem kind");
}

ProblemKind problem_kind_from_string(const std::string& name) {
    if (name == "mwcp") return ProblemKind::mwcp;
    if (name == "tsp") return ProblemKind::tsp;
    if (name == "op") return ProblemKind::op;
    throw BadInput("unknown problem kind: " + name);
}

WeightedGraph WeightedGraph::from_edges(std::uint32_t n,
                                        const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                        std::vector<double> weights) {
    if (weights.size() != n) throw BadInput("weight count does not match vertex count");
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) throw BadInput("vertex weights must be finite and nonnegative");
    }
    WeightedGraph g;
    g.n = n;
    g.weights = std::move(weights);
    g.adj.assign(n, {});
    g.matrix.assign(static_cast<std::size_t>(n) * n, 0);
    for (auto [i, j] : edges) {
        if (i >= n || j >= n) throw BadInput("edge endpoint out of range");
        if (i == j) throw BadInput("self-loop not allowed");
        const std::size_t a = static_cast<std::size_t>(i) * n + j;
        const std::size_t b = static_cast<std::size_t>(j) * n + i;
        if (g.matrix[a]) continue; // duplicate edge line
        g.matrix[a] = g.matrix[b] = 1;
        g.adj[i].push_back(j);
        g.adj[j].push_back(i);
        ++g.m;
    }
    for (auto& list : g.adj) std::sort(list.begin(), list.end());
    return g;
}

namespace {

std::vector<double> pairwise_distances(const std::vector<std::array<double, 2>>& coords) {
    const std::uint32_t n = static_cast<std::uint32_t>(coords.size());
    std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const double dx = coords[i][0] - coords[j][0];
            const double dy = coords[i][1] - coords[j][1];
            const double d = std::sqrt(dx * dx + dy * dy);
            dist[static_cast<std::size_t>(i) * n + j] = d;
            dist[static_cast<std::size_t>(j) * n + i] = d;
        }
    }
    return dist;
}

void check_coords(const std::vector<std::array<double, 2>>& coords) {
    for (const auto& c : coords) {
        if (!std::isfinite(c[0]) || !std::isfinite(c[1])) throw BadInput("non-finite coordinate");
    }
}

} // namespace

TspInstance TspInstance::from_coords(std::vector<std::array<double, 2>> coords) {
    if (coords.size() < 3) throw BadInput("TSP needs at least 3 cities");
    check_coords(coords);
    TspInstance t;
    t.n = static_cast<std::uint32_t>(coords.size());
    t.dist = pairwise_distances(coords);
    t.coords = std::move(coords);
    return t;
}

OpInstance OpInstance::from_parts(std::vector<std::array<double, 2>> coords,
                                  std::vector<double> prizes, double budget) {
    if (coords.size() < 2) throw BadInput("OP needs at least 2 locations");
    check_coords(coords);
    if (prizes.size() != coords.size()) throw BadInput("prize count does not match location count");
    if (prizes[0] != 0.0) throw BadInput("depot prize must be 0");
    for (double p : prizes) {
        if (!std::isfinite(p) || p < 0.0) throw BadInput("prizes must be finite and nonnegative");
    }
    if (!std::isfinite(budget) || budget < 0.0) throw BadInput("budget must be finite and nonnegative");
    OpInstance o;
    o.n = static_cast<std::uint32_t>(coords.size());
    o.dist = pairwise_distances(coords);
    o.coords = std::move(coords);
    o.prizes = std::move(prizes);
    o.budget = budget;
    return o;
}

ProblemInstance::ProblemInstance(WeightedGraph g)
    : kind_(ProblemKind::mwcp), data_(std::move(g)) {}
ProblemInstance::ProblemInstance(TspInstance t)
    : kind_(ProblemKind::tsp), data_(std::move(t)) {}
ProblemInstance::ProblemInstance(OpInstance o)
    : kind_(ProblemKind::op), data_(std::move(o)) {}

const WeightedGraph& ProblemInstance::graph() const {
    if (kind_ != ProblemKind::mwcp) throw Error("not a graph instance");
    return std::get<WeightedGraph>(data_);
}
const TspInstance& ProblemInstance::tsp() const {
    if (kind_ != ProblemKind::tsp) throw Error("not a TSP instance");
    return std::get<TspInstance>(data_);
}
const OpInstance& ProblemInstance::op() const {
    if (kind_ != ProblemKind::op) throw Error("not an OP instance");
    return std::get<OpInstance>(data_);
}

std::uint32_t ProblemInstance::size() const {
    switch (kind_) {
        case ProblemKind::mwcp: return graph().n;
        case ProblemKind::tsp: return tsp().n;
        case ProblemKind::op: return op().n;
    }
    return 0;
}

std::size_t ProblemInstance::var_count() const {
    const std::size_t n = size();
    return kind_ == ProblemKind::mwcp ? n : n * (n - 1);
}

std::pair<std::uint32_t, std::uint32_t> edge_from_index(std::size_t index, std::uint32_t n) {
    const std::uint32_t i = static_cast<std::uint32_t>(index / (n - 1));
    std::uint32_t j = static_cast<std::uint32_t>(index % (n - 1));
    if (j >= i) ++j;
    return {i, j};
}

WeightedGraph load_dimacs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open graph file: " + path);
    std::uint32_t n = 0;
    bool have_problem = false;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<double> weights;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag) || tag == "c") continue;
        if (tag == "p") {
            std::string fmt;
            std::size_t m = 0;
            if (!(ss >> fmt >> n >> m) || fmt != "edge")
                throw BadInput("bad problem line in " + path + ":" + std::to_string(lineno));
            weights.assign(n, 1.0);
            have_problem = true;
        } else if (tag == "v") {
            std::uint32_t i = 0;
            double w = 0.0;
            if (!have_problem || !(ss >> i >> w) || i < 1 || i > n)
                throw BadInput("bad vertex line in " + path + ":" + std::to_string(lineno));
            weights[i - 1] = w;
        } else if (tag == "e") {
            std::uint32_t i = 0, j = 0;
            if (!have_problem || !(ss >> i >> j) || i < 1 || j < 1 || i > n || j > n)
                throw BadInput("bad edge line in " + path + ":" + std::to_string(lineno));
            edges.emplace_back(i - 1, j - 1);
        } else {
            throw BadInput("unknown line tag '" + tag + "' in " + path + ":" + std::to_string(lineno));
        }
    }
    if (!have_problem) throw BadInput("missing problem line in " + path);
    return WeightedGraph::from_edges(n, edges, std::move(weights));
}

void save_dimacs(const WeightedGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw BadInput("cannot write graph file: " + path);
    out << "p edge " << g.n << ' ' << g.m << '\n';
    out.precision(17);
    for (std::uint32_t i = 0; i < g.n; ++i) out << "v " << (i + 1) << ' ' << g.weights[i] << '\n';
    for (std::uint32_t i = 0; i < g.n; ++i) {
        for (std::uint32_t j : g.adj[i]) {
            if (j > i) out << "e " << (i + 1) << ' ' << (j + 1) << '\n';
        }
    }
}

namespace {

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw BadInput("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw BadInput("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

} // namespace

ProblemInstance load_instance_json(const std::string& path) {
    const nlohmann::json j = read_json_file(path);
    if (!j.contains("coords")) throw BadInput("instance file missing 'coords': " + path);
    std::vector<std::array<double, 2>> coords;
    for (const auto& c : j.at("coords")) {
        if (!c.is_array() || c.size() != 2) throw BadInput("bad coordinate entry in " + path);
        coords.push_back({c[0].get<double>(), c[1].get<double>()});
    }
    if (j.contains("budget") || j.contains("prizes")) {
        if (!j.contains("budget") || !j.contains("prizes"))
            throw BadInput("OP instance needs both 'prizes' and 'budget': " + path);
        if (j.contains("depot") && j.at("depot").get<int>() != 0)
            throw BadInput("depot must be location 0: " + path);
        return ProblemInstance(OpInstance::from_parts(
            std::move(coords), j.at("prizes").get<std::vector<double>>(), j.at("budget").get<double>()));
    }
    return ProblemInstance(TspInstance::from_coords(std::move(coords)));
}

void save_instance_json(const ProblemInstance& inst, const std::string& path) {
    nlohmann::json j;
    switch (inst.kind()) {
        case ProblemKind::mwcp:
            save_dimacs(inst.graph(), path);
            return;
        case ProblemKind::tsp: {
            j["coords"] = inst.tsp().coords;
            break;
        }
        case ProblemKind::op: {
            const auto& o = inst.op();
            j["coords"] = o.coords;
            j["prizes"] = o.prizes;
            j["budget"] = o.budget;
            j["depot"] = 0;
            break;
        }
    }
    write_json_file(j, path);
}

ProblemInstance load_instance(const std::string& path) {
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    if (ext == ".col" || ext == ".dimacs" || ext == ".clq")
        return ProblemInstance(load_dimacs(path));
    if (ext == ".json") return load_instance_json(path);
    throw BadInput("unknown instance extension: " + path);
}

} // namespace asp
