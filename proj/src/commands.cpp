#include "asptk/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "asptk/metrics.hpp"
#include "asptk/solution.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace asp::cli {

namespace {

void ensure_dir(const std::string& dir) {
    if (dir.empty()) throw BadInput("output directory not set");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw BadInput("cannot create directory " + dir + ": " + ec.message());
}

void write_config(const json& j, const std::string& dir, const std::string& name) {
    std::ofstream out(fs::path(dir) / name);
    if (!out) throw BadInput("cannot write config echo in " + dir);
    out << j.dump(2) << '\n';
}

std::string zero_pad(std::size_t v, int width) {
    std::string s = std::to_string(v);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

std::vector<fs::path> sorted_files(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw BadInput("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::string num(double x) { return json(x).dump(); }

} // namespace

void cmd_gen(const GenOptions& opt) {
    if (opt.count == 0) throw BadInput("count must be >= 1");
    ensure_dir(opt.out_dir);
    const fs::path inst_dir = fs::path(opt.out_dir) / "instances";
    ensure_dir(inst_dir.string());

    json cfg{{"command", "gen"},
             {"problem", to_string(opt.problem)},
             {"n", opt.n},
             {"count", opt.count},
             {"seed", opt.seed},
             {"out", opt.out_dir}};
    for (std::size_t i = 0; i < opt.count; ++i) {
        const std::uint64_t seed_i = splitmix64(opt.seed + i);
        const std::string stem =
            to_string(opt.problem) + "_n" + std::to_string(opt.n) + "_" + zero_pad(i, 4);
        switch (opt.problem) {
            case ProblemKind::mwcp: {
                const WeightedGraph g = opt.graph_model == "ba"
                                            ? gen_ba(opt.n, opt.attach_m, seed_i)
                                            : gen_er(opt.n, opt.density, seed_i);
                save_dimacs(g, (inst_dir / (stem + ".col")).string());
                break;
            }
            case ProblemKind::tsp:
                save_instance_json(ProblemInstance(gen_tsp(opt.n, seed_i)),
                                   (inst_dir / (stem + ".json")).string());
                break;
            case ProblemKind::op:
                save_instance_json(
                    ProblemInstance(gen_op(opt.n, opt.prize_scheme, opt.mean_tour_len, seed_i)),
                    (inst_dir / (stem + ".json")).string());
                break;
        }
    }
    if (opt.problem == ProblemKind::mwcp) {
        cfg["graph_model"] = opt.graph_model;
        if (opt.graph_model == "ba") {
            cfg["attach_m"] = opt.attach_m;
        } else {
            cfg["density"] = opt.density;
        }
    } else if (opt.problem == ProblemKind::op) {
        cfg["prize_scheme"] = to_string(opt.prize_scheme);
        cfg["mean_tour_len"] = opt.mean_tour_len;
    }
    write_config(cfg, opt.out_dir, "gen.config.json");
}

void cmd_label(const LabelOptions& opt) {
    const fs::path inst_dir = fs::path(opt.data_dir) / "instances";
    const std::string out_root = opt.out_dir.empty() ? opt.data_dir : opt.out_dir;
    const auto files = sorted_files(inst_dir);
    if (files.empty()) throw BadInput("no instances under " + inst_dir.string());

    // Solve everything before writing anything, so a tripped oracle guard
    // leaves no partial output.
    std::vector<std::pair<std::string, LabeledInstance>> labeled;
    for (const auto& f : files) {
        labeled.emplace_back(f.stem().string(), label_instance(load_instance(f.string())));
    }
    ensure_dir(out_root);
    const fs::path label_dir = fs::path(out_root) / "labels";
    ensure_dir(label_dir.string());
    for (const auto& [stem, li] : labeled) {
        save_solution_json(li.optimum, li.optimal_objective,
                           (label_dir / (stem + ".json")).string());
    }
    write_config(json{{"command", "label"}, {"data", opt.data_dir}, {"out", out_root}}, out_root,
                 "label.config.json");
}

namespace {

std::vector<LabeledInstance> load_labeled_dir(const std::string& data_dir, ProblemKind problem) {
    const auto files = sorted_files(fs::path(data_dir) / "instances");
    const fs::path label_dir = fs::path(data_dir) / "labels";
    std::vector<LabeledInstance> out;
    for (const auto& f : files) {
        ProblemInstance inst = load_instance(f.string());
        if (inst.kind() != problem)
            throw BadInput("instance " + f.string() + " is not a " + to_string(problem) +
                           " instance");
        const fs::path lf = label_dir / (f.stem().string() + ".json");
        if (!fs::exists(lf)) throw BadInput("missing label file " + lf.string());
        auto [sol, obj] = load_solution_json(lf.string());
        out.push_back({std::move(inst), std::move(sol), obj});
    }
    if (out.empty()) throw BadInput("no labeled instances under " + data_dir);
    return out;
}

} // namespace

void cmd_train(const TrainOptions& opt) {
    auto labeled = load_labeled_dir(opt.data_dir, opt.problem);

    const auto examples = build_training_set(labeled, opt.m_init, opt.seed);
    std::size_t n_pos = 0;
    for (const auto& ex : examples) n_pos += static_cast<std::size_t>(ex.label);
    const auto [r_plus, r_minus] = class_weights(n_pos, examples.size() - n_pos);

    TrainConfig tc;
    tc.r_plus = r_plus;
    tc.r_minus = r_minus;
    tc.epochs = opt.epochs;
    tc.eta0 = opt.eta0;
    tc.lambda = opt.lambda;
    tc.seed = opt.seed;
    const LinearModel model = train_svm(examples, tc);

    Calibration cal{opt.beta0, opt.beta1};
    if (opt.tune) {
        std::vector<const ProblemInstance*> tuning;
        const std::size_t k = std::min<std::size_t>(labeled.size(),
                                                    std::max<std::size_t>(1, opt.tune_instances));
        for (std::size_t i = 0; i < k; ++i) tuning.push_back(&labeled[i].instance);
        TuneConfig tcfg;
        tcfg.trials = opt.tune_trials;
        tcfg.iterations = opt.tune_iterations;
        tcfg.seed = opt.seed;
        tcfg.threads = opt.threads;
        cal = tune_calibration(model, tuning, tcfg);
    }

    ModelFile mf;
    mf.model = model;
    mf.cal = cal;
    mf.problem = opt.problem;
    mf.feature_names = {"rank_score", "corr_score"};
    for (auto& n : problem_feature_names(opt.problem)) mf.feature_names.push_back(n);

    const fs::path out_path(opt.model_out);
    if (out_path.has_parent_path()) ensure_dir(out_path.parent_path().string());
    save_model(mf, opt.model_out);

    json cfg{{"command", "train"},
             {"data", opt.data_dir},
             {"problem", to_string(opt.problem)},
             {"model", opt.model_out},
             {"m_init", opt.m_init},
             {"epochs", opt.epochs},
             {"eta0", opt.eta0},
             {"lambda", opt.lambda},
             {"seed", opt.seed},
             {"examples", examples.size()},
             {"positives", n_pos},
             {"r_plus", r_plus},
             {"tune", opt.tune},
             {"beta0", cal.beta0},
             {"beta1", cal.beta1}};
    if (opt.tune) {
        cfg["tune_trials"] = opt.tune_trials;
        cfg["tune_iterations"] = opt.tune_iterations;
        cfg["tune_instances"] = opt.tune_instances;
    }
    const std::string cfg_dir =
        out_path.has_parent_path() ? out_path.parent_path().string() : std::string(".");
    write_config(cfg, cfg_dir, out_path.filename().string() + ".train.config.json");
}

void cmd_solve(const SolveOptions& opt) {
    const ModelFile mf = load_model(opt.model_path);
    const ProblemInstance inst = load_instance(opt.instance_path);
    if (inst.kind() != mf.problem)
        throw BadInput("model is for " + to_string(mf.problem) + " but the instance is " +
                       to_string(inst.kind()));

    std::optional<std::pair<Solution, double>> optimum;
    if (!opt.optimum_path.empty()) {
        optimum = load_solution_json(opt.optimum_path);
        if (optimum->first.kind != inst.kind())
            throw BadInput("optimum file problem kind mismatch");
    }

    AspConfig asp;
    asp.iterations = opt.iterations;
    asp.samples = opt.samples;
    asp.init_samples = opt.init_samples;
    asp.seed = opt.seed;
    asp.pinned_fraction = opt.pinned_fraction;
    asp.stall_limit = opt.stall_limit;
    asp.time_budget_ms = opt.time_budget_ms;
    asp.threads = opt.threads;

    const AspResult result =
        asp_run(inst, mf.model, mf.cal, asp, optimum ? &optimum->first : nullptr);

    ensure_dir(opt.out_dir);
    const fs::path out(opt.out_dir);
    save_solution_json(result.best_solution, result.best_objective,
                       (out / "solution.json").string());
    save_trace_csv(result.trace, (out / "trace.csv").string());
    if (opt.dump_features) save_features_csv(result.last_features, (out / "features.csv").string());

    json cfg{{"command", "solve"},
             {"model", opt.model_path},
             {"instance", opt.instance_path},
             {"problem", to_string(inst.kind())},
             {"iterations", opt.iterations},
             {"samples", opt.samples},
             {"init_samples", opt.init_samples},
             {"pinned_fraction", opt.pinned_fraction},
             {"stall_limit", opt.stall_limit},
             {"time_budget_ms", opt.time_budget_ms},
             {"seed", opt.seed},
             {"threads", opt.threads},
             {"best_objective", result.best_objective}};
    if (optimum) {
        cfg["optimum"] = opt.optimum_path;
        cfg["optimal_objective"] = optimum->second;
    }
    write_config(cfg, opt.out_dir, "solve.config.json");
}

void cmd_eval(const EvalOptions& opt) {
    if (!fs::is_directory(opt.runs_dir)) throw BadInput("not a directory: " + opt.runs_dir);
    std::vector<fs::path> runs;
    for (const auto& e : fs::directory_iterator(opt.runs_dir)) {
        if (e.is_directory() && fs::exists(e.path() / "solve.config.json")) {
            runs.push_back(e.path());
        }
    }
    std::sort(runs.begin(), runs.end());
    if (runs.empty()) throw BadInput("no solve runs under " + opt.runs_dir);

    struct Cell {
        double best_sum = 0.0;
        double gap_sum = 0.0;
        std::size_t gap_count = 0;
        double ap_sum = 0.0;
        std::size_t ap_count = 0;
        std::size_t runs = 0;
    };
    std::map<std::pair<std::string, int>, Cell> cells;
    std::string problem;

    for (const auto& run : runs) {
        std::ifstream cf(run / "solve.config.json");
        json cfg;
        cf >> cfg;
        const std::string run_problem = cfg.at("problem").get<std::string>();
        if (problem.empty()) {
            problem = run_problem;
        } else if (problem != run_problem) {
            throw BadInput("refusing to mix problems in eval: " + problem + " vs " + run_problem);
        }
        const std::string method = cfg.at("iterations").get<int>() == 1 ? "SSSP" : "ASP";
        std::optional<double> opt_obj;
        if (cfg.contains("optimal_objective")) opt_obj = cfg["optimal_objective"].get<double>();

        std::ifstream tf(run / "trace.csv");
        if (!tf) throw BadInput("missing trace.csv in " + run.string());
        std::string line;
        std::getline(tf, line); // header
        while (std::getline(tf, line)) {
            if (line.empty()) continue;
            std::vector<std::string> parts;
            std::stringstream ss(line);
            std::string tok;
            while (std::getline(ss, tok, ',')) parts.push_back(tok);
            while (parts.size() < 5) parts.emplace_back();
            const int iter = std::stoi(parts[0]);
            const double best_pool = std::stod(parts[1]);
            auto& cell = cells[{method, iter}];
            ++cell.runs;
            cell.best_sum += best_pool;
            if (opt_obj && *opt_obj != 0.0) {
                cell.gap_sum += primal_gap(best_pool, *opt_obj);
                ++cell.gap_count;
            }
            if (!parts[3].empty()) {
                cell.ap_sum += std::stod(parts[3]);
                ++cell.ap_count;
            }
        }
    }

    ensure_dir(opt.out_dir);
    std::ofstream out(fs::path(opt.out_dir) / "summary.csv");
    if (!out) throw BadInput("cannot write summary.csv in " + opt.out_dir);
    out << "method,iteration,runs,mean_best_pool_obj,mean_primal_gap,mean_avg_precision\n";
    for (const auto& [key, cell] : cells) {
        out << key.first << ',' << key.second << ',' << cell.runs << ','
            << num(cell.best_sum / static_cast<double>(cell.runs)) << ',';
        if (cell.gap_count) out << num(cell.gap_sum / static_cast<double>(cell.gap_count));
        out << ',';
        if (cell.ap_count) out << num(cell.ap_sum / static_cast<double>(cell.ap_count));
        out << '\n';
    }
    out.close();
    write_config(json{{"command", "eval"}, {"runs", opt.runs_dir}, {"problem", problem}},
                 opt.out_dir, "eval.config.json");
}

void cmd_cg(const CgOptions& opt) {
    const WeightedGraph g = load_dimacs(opt.graph_path);

    std::optional<ModelFile> mf;
    if (!opt.model_path.empty()) {
        mf = load_model(opt.model_path);
        if (mf->problem != ProblemKind::mwcp)
            throw BadInput("column generation pricing needs an mwcp model");
    }

    CgConfig cfg;
    cfg.seed = opt.seed;
    cfg.init_columns = opt.init_columns;
    cfg.column_cap = opt.column_cap;
    cfg.max_iterations = opt.max_iterations;
    cfg.use_heuristic = mf.has_value();
    cfg.threads = opt.threads;
    if (mf) {
        cfg.model = &mf->model;
        cfg.cal = &mf->cal;
        cfg.pricer.iterations = opt.asp_iterations;
        cfg.pricer.samples = opt.asp_samples;
    }
    const CgResult result = cg_loop(g, cfg);

    ensure_dir(opt.out_dir);
    const fs::path out(opt.out_dir);
    save_cg_trace_csv(result, (out / "trace.csv").string());
    json res{{"lp_objective", result.lp_objective},
             {"lp_solves", result.lp_solves},
             {"columns_added", result.columns_added},
             {"column_count", result.columns.size()}};
    std::ofstream rf(out / "result.json");
    rf << res.dump(2) << '\n';

    json cfg_echo{{"command", "cg"},
                  {"graph", opt.graph_path},
                  {"model", opt.model_path},
                  {"seed", opt.seed},
                  {"init_columns", opt.init_columns},
                  {"column_cap", opt.column_cap},
                  {"max_iterations", opt.max_iterations},
                  {"asp_iterations", opt.asp_iterations},
                  {"asp_samples", opt.asp_samples},
                  {"pricer", mf ? "heuristic+exact" : "exact"}};
    write_config(cfg_echo, opt.out_dir, "cg.config.json");
}

} // namespace asp::cli
