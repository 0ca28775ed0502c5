#pragma once

#include <cstdint>
#include <string>

#include "asptk/colgen.hpp"
#include "asptk/engine.hpp"
#include "asptk/generators.hpp"
#include "asptk/training.hpp"

namespace asp::cli {

// Each command is a pure function of (inputs, options): rerunning with the
// same options reproduces the outputs byte-for-byte except elapsed-time
// columns. Every command echoes its resolved options into the output
// directory as <command>.config.json.

struct GenOptions {
    ProblemKind problem = ProblemKind::mwcp;
    std::string graph_model = "er"; // er | ba
    std::uint32_t n = 40;
    std::size_t count = 10;
    double density = 0.25;
    std::uint32_t attach_m = 4;
    PrizeScheme prize_scheme = PrizeScheme::constant;
    double mean_tour_len = 4.0;
    std::uint64_t seed = 1;
    std::string out_dir;
};
void cmd_gen(const GenOptions& opt);

struct LabelOptions {
    std::string data_dir; // contains instances/
    std::string out_dir;  // labels/ written here; empty -> data_dir
};
void cmd_label(const LabelOptions& opt);

struct TrainOptions {
    std::string data_dir; // instances/ + labels/
    ProblemKind problem = ProblemKind::mwcp;
    std::string model_out;
    std::size_t m_init = 0; // 0 -> per-instance problem default
    int epochs = 200;
    double eta0 = 0.1;
    double lambda = 1e-3;
    std::uint64_t seed = 1;
    bool tune = false;
    int tune_trials = 32;
    int tune_iterations = 5;
    std::size_t tune_instances = 8;
    double beta0 = 2.0; // used when tune == false
    double beta1 = 0.0;
    int threads = 1;
};
void cmd_train(const TrainOptions& opt);

struct SolveOptions {
    std::string model_path;
    std::string instance_path;
    std::string optimum_path; // optional solution file enabling gap/AP columns
    std::string out_dir;
    int iterations = 10;
    std::size_t samples = 0;
    std::size_t init_samples = 0;
    double pinned_fraction = -1.0;
    int stall_limit = 0;
    std::int64_t time_budget_ms = 0;
    std::uint64_t seed = 1;
    int threads = 1;
    bool dump_features = false;
};
void cmd_solve(const SolveOptions& opt);

struct EvalOptions {
    std::string runs_dir;
    std::string out_dir;
};
void cmd_eval(const EvalOptions& opt);

struct CgOptions {
    std::string graph_path;
    std::string model_path; // empty -> exact pricing only
    std::string out_dir;
    std::uint64_t seed = 1;
    std::size_t init_columns = 0; // 0 -> 10n
    std::size_t column_cap = 0;   // 0 -> n
    int max_iterations = 10000;
    int asp_iterations = 10;
    std::size_t asp_samples = 0; // 0 -> n
    int threads = 1;
};
void cmd_cg(const CgOptions& opt);

} // namespace asp::cli
