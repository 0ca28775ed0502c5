#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "asptk/commands.hpp"

using nlohmann::json;

namespace {

// --config <file.json> provides defaults; command-line flags override it.
// The file is flat: {"n": 40, "density": 0.25, ...} with keys equal to the
// long option names of the chosen subcommand.
std::vector<std::string> merge_config_args(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") config_path = args[i + 1];
    }
    if (config_path.empty()) return args;
    std::ifstream in(config_path);
    if (!in) throw asp::BadInput("cannot open config file: " + config_path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw asp::BadInput("malformed config JSON: " + std::string(e.what()));
    }
    if (!cfg.is_object()) throw asp::BadInput("config file must hold a JSON object");
    std::vector<std::string> merged;
    if (!args.empty()) merged.push_back(args.front()); // subcommand name
    for (const auto& [key, value] : cfg.items()) {
        if (value.is_boolean()) {
            if (value.get<bool>()) merged.push_back("--" + key);
            continue;
        }
        merged.push_back("--" + key);
        merged.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    merged.insert(merged.end(), args.begin() + (args.empty() ? 0 : 1), args.end());
    return merged;
}

int fail(const std::string& type, const std::string& message, int code) {
    std::cerr << json{{"error", {{"type", type}, {"message", message}}}}.dump() << std::endl;
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive solution prediction toolkit"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string config_path, problem = "mwcp", prize_scheme = "constant";

    auto add_config = [&config_path](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON file with option defaults");
    };

    asp::cli::GenOptions gen;
    auto* cgen = app.add_subcommand("gen", "Generate problem instances");
    cgen->add_option("--problem", problem, "mwcp|tsp|op");
    cgen->add_option("--graph-model", gen.graph_model, "er|ba (mwcp only)");
    cgen->add_option("--n", gen.n, "instance size");
    cgen->add_option("--count", gen.count, "number of instances");
    cgen->add_option("--density", gen.density, "ER edge density");
    cgen->add_option("--attach-m", gen.attach_m, "BA edges per new vertex");
    cgen->add_option("--prize-scheme", prize_scheme, "constant|uniform|distance (op)");
    cgen->add_option("--mean-tour-len", gen.mean_tour_len, "d for the OP budget interval");
    cgen->add_option("--seed", gen.seed, "base seed");
    cgen->add_option("--out", gen.out_dir, "output directory")->required();
    add_config(cgen);

    asp::cli::LabelOptions label;
    auto* clabel = app.add_subcommand("label", "Solve instances exactly and write label files");
    clabel->add_option("--data", label.data_dir, "dataset directory (with instances/)")->required();
    clabel->add_option("--out", label.out_dir, "output directory (default: dataset directory)");
    add_config(clabel);

    asp::cli::TrainOptions train;
    auto* ctrain = app.add_subcommand("train", "Train the linear classifier");
    ctrain->add_option("--data", train.data_dir, "labeled dataset directory")->required();
    ctrain->add_option("--problem", problem, "mwcp|tsp|op");
    ctrain->add_option("--out", train.model_out, "model file to write")->required();
    ctrain->add_option("--m-init", train.m_init, "initial pool size per instance");
    ctrain->add_option("--epochs", train.epochs, "training epochs");
    ctrain->add_option("--eta0", train.eta0, "initial step size");
    ctrain->add_option("--lambda", train.lambda, "step decay");
    ctrain->add_option("--seed", train.seed, "seed");
    ctrain->add_flag("--tune", train.tune, "tune beta0/beta1 by seeded random search");
    ctrain->add_option("--tune-trials", train.tune_trials, "random search trials");
    ctrain->add_option("--tune-iterations", train.tune_iterations, "ASP iterations per trial");
    ctrain->add_option("--tune-instances", train.tune_instances, "tuning instances");
    ctrain->add_option("--beta0", train.beta0, "calibration slope when not tuning");
    ctrain->add_option("--beta1", train.beta1, "calibration offset when not tuning");
    ctrain->add_option("--threads", train.threads, "worker threads");
    add_config(ctrain);

    asp::cli::SolveOptions solve;
    auto* csolve = app.add_subcommand("solve", "Run ASP on one instance");
    csolve->add_option("--model", solve.model_path, "model file")->required();
    csolve->add_option("--instance", solve.instance_path, "instance file")->required();
    csolve->add_option("--optimum", solve.optimum_path, "optional label file for gap/AP");
    csolve->add_option("--out", solve.out_dir, "run output directory")->required();
    csolve->add_option("--T,--iterations", solve.iterations, "ASP iterations (1 = SSSP)");
    csolve->add_option("--M,--samples", solve.samples, "samples per iteration (0 = default)");
    csolve->add_option("--init-samples", solve.init_samples, "initial pool size (0 = M)");
    csolve->add_option("--pinned-fraction", solve.pinned_fraction,
                       "fraction of initial samples never evicted (<0 = default)");
    csolve->add_option("--stall-limit", solve.stall_limit, "stop after S stalled iterations");
    csolve->add_option("--time-budget-ms", solve.time_budget_ms, "optional time budget");
    csolve->add_option("--seed", solve.seed, "seed");
    csolve->add_option("--threads", solve.threads, "worker threads");
    csolve->add_flag("--dump-features", solve.dump_features, "write features.csv");
    add_config(csolve);

    asp::cli::EvalOptions eval;
    auto* ceval = app.add_subcommand("eval", "Summarize a directory of solve runs");
    ceval->add_option("--runs", eval.runs_dir, "directory of run directories")->required();
    ceval->add_option("--out", eval.out_dir, "output directory")->required();
    add_config(ceval);

    asp::cli::CgOptions cg;
    auto* ccg = app.add_subcommand("cg", "Column generation for graph coloring");
    ccg->add_option("--graph", cg.graph_path, "DIMACS graph file")->required();
    ccg->add_option("--model", cg.model_path, "mwcp model for heuristic pricing");
    ccg->add_option("--out", cg.out_dir, "output directory")->required();
    ccg->add_option("--seed", cg.seed, "seed");
    ccg->add_option("--init-columns", cg.init_columns, "initial random columns (0 = 10n)");
    ccg->add_option("--column-cap", cg.column_cap, "columns added per iteration (0 = n)");
    ccg->add_option("--max-iterations", cg.max_iterations, "iteration cap");
    ccg->add_option("--asp-iterations", cg.asp_iterations, "ASP iterations inside pricing");
    ccg->add_option("--asp-samples", cg.asp_samples, "ASP samples per pricing iteration (0 = n)");
    ccg->add_option("--threads", cg.threads, "worker threads");
    add_config(ccg);

    try {
        const auto args = merge_config_args(argc, argv);
        std::vector<const char*> cargs{argv[0]};
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());

        if (cgen->parsed()) {
            gen.problem = asp::problem_kind_from_string(problem);
            gen.prize_scheme = asp::prize_scheme_from_string(prize_scheme);
            asp::cli::cmd_gen(gen);
        } else if (clabel->parsed()) {
            asp::cli::cmd_label(label);
        } else if (ctrain->parsed()) {
            train.problem = asp::problem_kind_from_string(problem);
            asp::cli::cmd_train(train);
        } else if (csolve->parsed()) {
            asp::cli::cmd_solve(solve);
        } else if (ceval->parsed()) {
            asp::cli::cmd_eval(eval);
        } else if (ccg->parsed()) {
            asp::cli::cmd_cg(cg);
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("bad_input", e.what(), 2);
    } catch (const asp::OracleGuard& e) {
        return fail("oracle_guard", e.what(), 3);
    } catch (const asp::NumericalFailure& e) {
        return fail("numerical", e.what(), 4);
    } catch (const asp::BadInput& e) {
        return fail("bad_input", e.what(), 2);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
}
