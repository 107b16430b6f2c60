// Python bindings for the core operations: dataset generation, the FS
// training/ranking pipeline, the success index and the Fisher baseline.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "snelfs/eval.hpp"
#include "snelfs/generators.hpp"
#include "snelfs/json_io.hpp"
#include "snelfs/train.hpp"

namespace py = pybind11;
using namespace snelfs;

namespace {

Matrix matrix_from_numpy(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw ShapeError("x must be a 2-d array");
    Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    std::copy(a.data(), a.data() + a.size(), m.data.begin());
    return m;
}

Vector vector_from_numpy(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1) throw ShapeError("y must be a 1-d array");
    return Vector(a.data(), a.data() + a.size());
}

py::array_t<double> numpy_from_matrix(const Matrix& m) {
    py::array_t<double> out({m.rows, m.cols});
    std::copy(m.data.begin(), m.data.end(), out.mutable_data());
    return out;
}

// Shape and strides spelled out: the one-argument 1-d ctor of the packaged
// pybind11 2.9 produces a stride-0 array.
py::array_t<double> numpy_from_vector(const Vector& v) {
    py::array_t<double> out({static_cast<py::ssize_t>(v.size())},
                            {static_cast<py::ssize_t>(sizeof(double))});
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

Task task_from_name(const std::string& name, const Vector& y) {
    if (name == "binary") return Task::binary();
    if (name == "regression") return Task::regression();
    if (name == "multiclass") {
        double top = 0.0;
        for (double v : y) top = std::max(top, v);
        return Task::multiclass(static_cast<std::size_t>(top) + 1);
    }
    throw ParamError("task must be 'binary', 'multiclass' or 'regression'");
}

json json_from_py(const py::handle& obj) {
    if (obj.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj)) return obj.cast<std::int64_t>();
    if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
    if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
    if (py::isinstance<py::dict>(obj)) {
        json j = json::object();
        for (const auto& item : obj.cast<py::dict>()) {
            j[item.first.cast<std::string>()] = json_from_py(item.second);
        }
        return j;
    }
    if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
        json j = json::array();
        for (const auto& item : obj.cast<py::sequence>()) j.push_back(json_from_py(item));
        return j;
    }
    throw ParamError("config values must be plain JSON-like python objects");
}

py::dict generate(const std::string& name, std::uint64_t seed, std::size_t n, std::size_t m,
                  std::size_t n_informative, std::size_t clusters_per_class, double vertex_scale,
                  double cluster_std, double noise) {
    GeneratedDataset g;
    if (name == "xor") {
        g = gen_xor(seed, n, m);
    } else if (name == "madelon") {
        g = gen_madelon({seed, n, m, n_informative, clusters_per_class, vertex_scale,
                         cluster_std});
    } else if (name == "linreg") {
        g = gen_linreg({seed, n, m, n_informative, noise});
    } else if (name == "friedman") {
        g = gen_friedman(seed, n, m, noise);
    } else {
        throw ParamError("unknown generator '" + name +
                         "' (expected xor, madelon, linreg or friedman)");
    }
    py::dict out;
    out["x"] = numpy_from_matrix(g.data.x);
    out["y"] = numpy_from_vector(g.data.y);
    out["task"] = g.data.task.kind == TaskKind::Regression ? "regression" : "binary";
    out["feature_names"] = g.data.feature_names;
    out["true_features"] = g.true_features;
    if (!g.coefficients.empty()) out["coefficients"] = numpy_from_vector(g.coefficients);
    return out;
}

py::dict run_select(const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
                const py::array_t<double, py::array::c_style | py::array::forcecast>& y,
                const std::string& task, const py::object& config, std::uint64_t seed) {
    Dataset ds;
    ds.x = matrix_from_numpy(x);
    ds.y = vector_from_numpy(y);
    ds.task = task_from_name(task, ds.y);

    TrainConfig cfg;
    cfg.architecture.hidden = {5, 5};
    cfg.architecture.l1 = 0.01;
    cfg.architecture.l2 = 0.01;
    cfg.metric = ds.task.is_classification() ? Metric::Accuracy : Metric::NegMse;
    if (!config.is_none()) apply_config_json(cfg, json_from_py(config));
    cfg.seed = seed;

    const TrainReport report = train(ds, cfg);
    py::dict out;
    out["ranking_sum"] = report.saliency.ranking_sum;
    out["ranking_max"] = report.saliency.ranking_max;
    out["sum_weight"] = numpy_from_vector(report.saliency.sum_weight);
    out["max_weight"] = numpy_from_vector(report.saliency.max_weight);
    out["duplicate_selections"] = report.saliency.duplicate_selections;
    out["excluded_neurons"] = report.saliency.excluded_neurons;
    out["val_metric"] = report.best.val_metric;
    out["metric"] = metric_name(cfg.metric);
    out["epochs_executed"] = report.epochs_executed;
    out["no_admissible_model"] = report.no_admissible_model;
    out["warnings"] = report.warnings;
    return out;
}

double success(const std::vector<std::size_t>& selected,
               const std::vector<std::size_t>& true_features, std::size_t m) {
    return index_of_success({selected, true_features, m});
}

double success_ranked(const std::vector<std::size_t>& ranking, std::size_t top_k,
                      const std::vector<std::size_t>& true_features, std::size_t m) {
    return success_from_ranking(ranking, top_k, true_features, m);
}

py::array_t<double> fisher(const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
                           const py::array_t<double, py::array::c_style | py::array::forcecast>& y,
                           std::size_t classes) {
    Dataset ds;
    ds.x = matrix_from_numpy(x);
    ds.y = vector_from_numpy(y);
    ds.task = classes <= 2 ? Task::binary() : Task::multiclass(classes);
    return numpy_from_vector(fisher_score(ds));
}

} // namespace

PYBIND11_MODULE(_snelfs, mod) {
    mod.doc() = "Feature selection with a sparse neural-network selection layer";
    mod.attr("__version__") = "0.1.0";

    py::register_exception<ParamError>(mod, "ParamError", PyExc_ValueError);
    py::register_exception<ShapeError>(mod, "ShapeError", PyExc_ValueError);
    py::register_exception<DataError>(mod, "DataError", PyExc_ValueError);
    py::register_exception<NumericError>(mod, "NumericError", PyExc_ArithmeticError);

    mod.def("generate", &generate, py::arg("name"), py::kw_only(), py::arg("seed") = 0,
            py::arg("n") = 200, py::arg("m") = 500, py::arg("n_informative") = 5,
            py::arg("clusters_per_class") = 4, py::arg("vertex_scale") = 2.0,
            py::arg("cluster_std") = 1.0, py::arg("noise") = 0.0,
            "Generate a synthetic benchmark (xor, madelon, linreg or friedman).");

    mod.def("select", &run_select, py::arg("x"), py::arg("y"), py::kw_only(),
            py::arg("task") = "binary", py::arg("config") = py::none(), py::arg("seed") = 0,
            "Train the FS network on (x, y) and return saliency rankings. `config` takes\n"
            "the same keys as the CLI config JSON (dim, lr, hidden, l1, l2, schedule, ...).");

    mod.def("index_of_success", &success, py::arg("selected"), py::arg("true_features"),
            py::arg("m"), "Success index of a selected feature set against the ground truth.");

    mod.def("success_from_ranking", &success_ranked, py::arg("ranking"), py::arg("top_k"),
            py::arg("true_features"), py::arg("m"),
            "Success index of the top_k of a full ranking, with the all-true-first rule.");

    mod.def("fisher_score", &fisher, py::arg("x"), py::arg("y"), py::kw_only(),
            py::arg("classes") = 2, "Per-feature Fisher score on a classification dataset.");
}
