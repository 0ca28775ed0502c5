#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "asptk/colgen.hpp"
#include "asptk/commands.hpp"
#include "asptk/metrics.hpp"
#include "asptk/training.hpp"

namespace py = pybind11;
using namespace asp;

namespace {

Solution make_solution(const ProblemInstance& inst, std::vector<std::uint32_t> vars) {
    switch (inst.kind()) {
        case ProblemKind::mwcp: return Solution::clique(std::move(vars));
        case ProblemKind::tsp: return Solution::tour(std::move(vars));
        case ProblemKind::op: return Solution::route(std::move(vars));
    }
    throw Error("unknown problem kind");
}

py::dict trace_to_dict(const AspTrace& trace) {
    py::list rows;
    for (const auto& r : trace.rows) {
        py::dict d;
        d["iteration"] = r.iteration;
        d["best_pool_obj"] = r.best_pool_obj;
        d["best_iter_obj"] = r.best_iter_obj;
        if (r.avg_precision) d["avg_precision"] = *r.avg_precision;
        d["elapsed_ms"] = r.elapsed_ms;
        rows.append(d);
    }
    py::dict out;
    out["rows"] = rows;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Adaptive solution prediction toolkit (C++ core)";

    py::register_exception<BadInput>(m, "BadInputError");
    py::register_exception<OracleGuard>(m, "OracleGuardError");
    py::register_exception<NumericalFailure>(m, "NumericalFailureError");

    py::class_<ProblemInstance>(m, "Instance")
        .def_property_readonly("kind",
                               [](const ProblemInstance& i) { return to_string(i.kind()); })
        .def_property_readonly("size", &ProblemInstance::size)
        .def_property_readonly("var_count", &ProblemInstance::var_count);

    py::class_<ModelFile>(m, "Model")
        .def_property_readonly("w", [](const ModelFile& f) { return f.model.w; })
        .def_property_readonly("b", [](const ModelFile& f) { return f.model.b; })
        .def_property_readonly("beta0", [](const ModelFile& f) { return f.cal.beta0; })
        .def_property_readonly("beta1", [](const ModelFile& f) { return f.cal.beta1; })
        .def_property_readonly("feature_names",
                               [](const ModelFile& f) { return f.feature_names; })
        .def_property_readonly("problem",
                               [](const ModelFile& f) { return to_string(f.problem); });

    // Instance generation and IO.
    m.def(
        "gen_er",
        [](std::uint32_t n, double density, std::uint64_t seed) {
            return ProblemInstance(gen_er(n, density, seed));
        },
        py::arg("n"), py::arg("density"), py::arg("seed"));
    m.def(
        "gen_ba",
        [](std::uint32_t n, std::uint32_t attach_m, std::uint64_t seed) {
            return ProblemInstance(gen_ba(n, attach_m, seed));
        },
        py::arg("n"), py::arg("attach_m"), py::arg("seed"));
    m.def(
        "gen_tsp",
        [](std::uint32_t n, std::uint64_t seed) { return ProblemInstance(gen_tsp(n, seed)); },
        py::arg("n"), py::arg("seed"));
    m.def(
        "gen_op",
        [](std::uint32_t n, const std::string& scheme, double mean_tour_len, std::uint64_t seed) {
            return ProblemInstance(
                gen_op(n, prize_scheme_from_string(scheme), mean_tour_len, seed));
        },
        py::arg("n"), py::arg("prize_scheme"), py::arg("mean_tour_len"), py::arg("seed"));
    m.def("load_instance", &load_instance, py::arg("path"));
    m.def("save_instance", &save_instance_json, py::arg("instance"), py::arg("path"));

    // Solution helpers.
    m.def(
        "objective",
        [](const ProblemInstance& inst, std::vector<std::uint32_t> vars) {
            return objective(inst, make_solution(inst, std::move(vars)));
        },
        py::arg("instance"), py::arg("vars"));
    m.def(
        "feasible",
        [](const ProblemInstance& inst, std::vector<std::uint32_t> vars) {
            const auto r = feasible(inst, make_solution(inst, std::move(vars)));
            return py::make_tuple(r.ok, r.reason);
        },
        py::arg("instance"), py::arg("vars"));

    // Exact oracles.
    m.def(
        "label",
        [](const ProblemInstance& inst) {
            const auto li = label_instance(inst);
            return py::make_tuple(li.optimum.seq, li.optimal_objective);
        },
        py::arg("instance"), "Solve exactly; returns (optimal_vars, objective)");

    // Classifier.
    m.def("class_weights", &class_weights, py::arg("n_pos"), py::arg("n_neg"));
    m.def(
        "train_svm",
        [](const std::vector<std::vector<double>>& features, const std::vector<int>& labels,
           double r_plus, double r_minus, int epochs, double eta0, double lambda,
           std::uint64_t seed) {
            if (features.size() != labels.size()) throw BadInput("features/labels length mismatch");
            std::vector<TrainingExample> data(features.size());
            for (std::size_t i = 0; i < features.size(); ++i) {
                data[i] = {features[i], labels[i]};
            }
            TrainConfig cfg{r_plus, r_minus, epochs, eta0, lambda, seed};
            const auto model = train_svm(data, cfg);
            return py::make_tuple(model.w, model.b);
        },
        py::arg("features"), py::arg("labels"), py::arg("r_plus") = 1.0, py::arg("r_minus") = 1.0,
        py::arg("epochs") = 200, py::arg("eta0") = 0.1, py::arg("lambda") = 1e-3,
        py::arg("seed") = 1);
    m.def(
        "decision_distance",
        [](const std::vector<double>& w, double b, const std::vector<double>& f) {
            return decision_distance({w, b}, f);
        },
        py::arg("w"), py::arg("b"), py::arg("f"));
    m.def(
        "calibrate",
        [](double d, double beta0, double beta1) { return calibrate(d, {beta0, beta1}); },
        py::arg("d"), py::arg("beta0"), py::arg("beta1"));
    m.def("load_model", &load_model, py::arg("path"));
    m.def(
        "save_model",
        [](const std::vector<double>& w, double b, double beta0, double beta1,
           const std::vector<std::string>& feature_names, const std::string& problem,
           const std::string& path) {
            save_model({{w, b}, {beta0, beta1}, feature_names, problem_kind_from_string(problem)},
                       path);
        },
        py::arg("w"), py::arg("b"), py::arg("beta0"), py::arg("beta1"), py::arg("feature_names"),
        py::arg("problem"), py::arg("path"));

    // Training data and metrics.
    m.def(
        "training_examples",
        [](const ProblemInstance& inst, std::vector<std::uint32_t> optimum_vars, double objective,
           std::size_t m_init, std::uint64_t seed) {
            std::vector<LabeledInstance> labeled;
            labeled.push_back({inst, make_solution(inst, std::move(optimum_vars)), objective});
            const auto ex = build_training_set(labeled, m_init, seed);
            std::vector<std::vector<double>> features;
            std::vector<int> labels;
            for (const auto& e : ex) {
                features.push_back(e.features);
                labels.push_back(e.label);
            }
            return py::make_tuple(features, labels);
        },
        py::arg("instance"), py::arg("optimum_vars"), py::arg("objective"), py::arg("m_init") = 0,
        py::arg("seed") = 1);
    m.def("average_precision", &average_precision, py::arg("scores"), py::arg("labels"));
    m.def("primal_gap", &primal_gap, py::arg("best_obj"), py::arg("opt_obj"));

    // The ASP loop.
    m.def(
        "asp_run",
        [](const ProblemInstance& inst, const std::vector<double>& w, double b, double beta0,
           double beta1, int iterations, std::size_t samples, std::size_t init_samples,
           std::uint64_t seed, double pinned_fraction, int stall_limit,
           std::int64_t time_budget_ms, int threads,
           const std::optional<std::vector<std::uint32_t>>& optimum_vars) {
            AspConfig cfg;
            cfg.iterations = iterations;
            cfg.samples = samples;
            cfg.init_samples = init_samples;
            cfg.seed = seed;
            cfg.pinned_fraction = pinned_fraction;
            cfg.stall_limit = stall_limit;
            cfg.time_budget_ms = time_budget_ms;
            cfg.threads = threads;
            std::optional<Solution> opt;
            if (optimum_vars) opt = make_solution(inst, *optimum_vars);
            const auto result =
                asp_run(inst, {w, b}, {beta0, beta1}, cfg, opt ? &*opt : nullptr);
            py::dict out;
            out["prediction"] = result.prediction;
            out["best_vars"] = result.best_solution.seq;
            out["best_objective"] = result.best_objective;
            out["trace"] = trace_to_dict(result.trace);
            return out;
        },
        py::arg("instance"), py::arg("w"), py::arg("b"), py::arg("beta0"), py::arg("beta1"),
        py::arg("iterations") = 10, py::arg("samples") = 0, py::arg("init_samples") = 0,
        py::arg("seed") = 1, py::arg("pinned_fraction") = -1.0, py::arg("stall_limit") = 0,
        py::arg("time_budget_ms") = 0, py::arg("threads") = 1,
        py::arg("optimum_vars") = std::nullopt);

    // Column generation.
    m.def(
        "cg_run",
        [](const ProblemInstance& inst, std::uint64_t seed, std::size_t init_columns,
           std::size_t column_cap, int max_iterations, const std::optional<ModelFile>& model,
           int asp_iterations, std::size_t asp_samples, int threads) {
            if (inst.kind() != ProblemKind::mwcp)
                throw BadInput("column generation runs on DIMACS graphs");
            CgConfig cfg;
            cfg.seed = seed;
            cfg.init_columns = init_columns;
            cfg.column_cap = column_cap;
            cfg.max_iterations = max_iterations;
            cfg.threads = threads;
            cfg.use_heuristic = model.has_value();
            if (model) {
                cfg.model = &model->model;
                cfg.cal = &model->cal;
                cfg.pricer.iterations = asp_iterations;
                cfg.pricer.samples = asp_samples;
            }
            const auto result = cg_loop(inst.graph(), cfg);
            py::list columns;
            for (const auto& c : result.columns) columns.append(c.vertices);
            py::list trace;
            for (const auto& r : result.trace) {
                py::dict d;
                d["iteration"] = r.iteration;
                d["lp_obj"] = r.lp_obj;
                d["new_columns"] = r.new_columns;
                d["pricer"] = r.exact_pricer ? "exact" : "heuristic";
                trace.append(d);
            }
            py::dict out;
            out["lp_objective"] = result.lp_objective;
            out["lp_solves"] = result.lp_solves;
            out["columns_added"] = result.columns_added;
            out["columns"] = columns;
            out["duals"] = result.duals;
            out["trace"] = trace;
            return out;
        },
        py::arg("instance"), py::arg("seed") = 1, py::arg("init_columns") = 0,
        py::arg("column_cap") = 0, py::arg("max_iterations") = 10000,
        py::arg("model") = std::nullopt, py::arg("asp_iterations") = 10,
        py::arg("asp_samples") = 0, py::arg("threads") = 1);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
