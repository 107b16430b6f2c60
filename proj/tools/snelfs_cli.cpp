// Command-line front end: synthetic data generation, FS-layer training and
// feature ranking, ground-truth scoring, and cross-validated evaluation.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <iostream>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "snelfs/csv.hpp"
#include "snelfs/eval.hpp"
#include "snelfs/generators.hpp"
#include "snelfs/json_io.hpp"
#include "snelfs/train.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using snelfs::json;

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// "report.json" + ".history.csv" -> "report.history.csv"; extensionless
// paths get the suffix appended.
std::string with_suffix(const std::string& path, const std::string& suffix) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path + suffix;
    }
    return path.substr(0, dot) + suffix;
}

std::string seed_variant(const std::string& path, std::uint64_t seed) {
    return with_suffix(path, ".seed" + std::to_string(seed) + ".json");
}

std::size_t worker_cap() {
    std::size_t cap = std::thread::hardware_concurrency();
    if (cap == 0) cap = 1;
    if (const char* env = std::getenv("SNELFS_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end == env || *end != '\0' || v == 0) {
            throw snelfs::ParamError("SNELFS_THREADS must be a positive integer");
        }
        cap = std::min<std::size_t>(cap, v);
    }
    return cap;
}

// Runs job(0..n_jobs-1) on up to worker_cap() threads; outputs indexed by
// job keep merges deterministic. The first exception wins and is rethrown.
template <typename F>
void run_parallel(std::size_t n_jobs, F&& job) {
    const std::size_t workers = std::min(n_jobs, worker_cap());
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_jobs; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n_jobs) return;
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    const auto parse_one = [](const std::string& s) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
        if (end == s.c_str() || *end != '\0') {
            throw snelfs::ParamError("seeds: cannot parse '" + s + "'");
        }
        return static_cast<std::uint64_t>(v);
    };
    const auto range = text.find("..");
    if (range != std::string::npos) {
        const std::uint64_t lo = parse_one(text.substr(0, range));
        const std::uint64_t hi = parse_one(text.substr(range + 2));
        if (hi < lo) throw snelfs::ParamError("seeds: descending range");
        if (hi - lo > 10000) throw snelfs::ParamError("seeds: range too large");
        for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        return seeds;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string part =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!part.empty()) seeds.push_back(parse_one(part));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (seeds.empty()) throw snelfs::ParamError("seeds: empty list");
    return seeds;
}

json manifest_skeleton(const std::vector<std::string>& argv_line) {
    json m;
    m["tool"] = "snelfs";
    m["version"] = kVersion;
    m["created_at"] = now_iso8601();
    m["command"] = argv_line;
    return m;
}

// ---------------------------------------------------------------------------
// generators shared by `gen` and `select --gen` / `cv`

struct GenOptions {
    std::string name;
    std::uint64_t seed = 0;
    std::size_t n = 200;
    std::size_t m = 500;
    std::size_t n_informative = 5;
    std::size_t clusters_per_class = 4;
    double vertex_scale = 2.0;
    double cluster_std = 1.0;
    double noise = 0.0;
};

void add_gen_flags(CLI::App* cmd, GenOptions& g) {
    cmd->add_option("--n", g.n, "Number of samples");
    cmd->add_option("--m", g.m, "Number of features");
    cmd->add_option("--seed", g.seed, "Generator seed");
    cmd->add_option("--n-informative", g.n_informative,
                    "Informative feature count (madelon, linreg)");
    cmd->add_option("--clusters-per-class", g.clusters_per_class, "Madelon clusters per class");
    cmd->add_option("--vertex-scale", g.vertex_scale, "Madelon hypercube half-edge");
    cmd->add_option("--cluster-std", g.cluster_std, "Madelon within-cluster std");
    cmd->add_option("--noise", g.noise, "Target noise std (linreg, friedman)");
}

snelfs::GeneratedDataset run_generator(const GenOptions& g) {
    if (g.name == "xor") return snelfs::gen_xor(g.seed, g.n, g.m);
    if (g.name == "madelon") {
        snelfs::MadelonParams p;
        p.seed = g.seed;
        p.n_samples = g.n;
        p.n_features = g.m;
        p.n_informative = g.n_informative;
        p.clusters_per_class = g.clusters_per_class;
        p.vertex_scale = g.vertex_scale;
        p.cluster_std = g.cluster_std;
        return snelfs::gen_madelon(p);
    }
    if (g.name == "linreg") {
        snelfs::LinregParams p;
        p.seed = g.seed;
        p.n_samples = g.n;
        p.n_features = g.m;
        p.n_informative = g.n_informative;
        p.noise_std = g.noise;
        return snelfs::gen_linreg(p);
    }
    if (g.name == "friedman") return snelfs::gen_friedman(g.seed, g.n, g.m, g.noise);
    throw snelfs::ParamError("unknown generator '" + g.name +
                             "' (expected xor, madelon, linreg or friedman)");
}

json gen_params_json(const GenOptions& g) {
    json p;
    p["generator"] = g.name;
    p["seed"] = g.seed;
    p["n"] = g.n;
    p["m"] = g.m;
    if (g.name == "madelon" || g.name == "linreg") p["n_informative"] = g.n_informative;
    if (g.name == "madelon") {
        p["clusters_per_class"] = g.clusters_per_class;
        p["vertex_scale"] = g.vertex_scale;
        p["cluster_std"] = g.cluster_std;
    }
    if (g.name == "linreg" || g.name == "friedman") p["noise"] = g.noise;
    return p;
}

json truth_json(const GenOptions& g, const snelfs::GeneratedDataset& gen) {
    json t;
    t["params"] = gen_params_json(g);
    t["n_features"] = gen.data.n_features();
    t["true_features"] = gen.true_features;
    if (!gen.coefficients.empty()) t["coefficients"] = gen.coefficients;
    return t;
}

// ---------------------------------------------------------------------------
// training configuration assembly: defaults -> preset -> config file -> flags

snelfs::TrainConfig preset_config(const std::string& name) {
    snelfs::TrainConfig cfg;
    cfg.dim = 15;
    cfg.schedule.lambda_s = {0.01, 0.2, 38, 1};
    cfg.schedule.lambda_a = {0.01, 0.2, 38, 2};
    cfg.schedule.epochs_per_stage = 1;
    cfg.architecture.l1 = 0.01;
    cfg.architecture.l2 = 0.01;
    if (name == "small") {
        cfg.architecture.hidden = {5, 5};
    } else if (name == "small-range") {
        cfg.architecture.hidden = {5, 5};
        cfg.schedule.lambda_s = {0.001, 0.02, 38, 1};
        cfg.schedule.lambda_a = {0.001, 0.02, 38, 2};
    } else if (name == "5k" || name == "5k-noreg") {
        cfg.architecture.hidden = {10};
        cfg.schedule.lambda_s = {0.01, 0.2, 19, 1};
        cfg.schedule.lambda_a = {0.01, 0.2, 19, 2};
        cfg.schedule.epochs_per_stage = 10;
        if (name == "5k-noreg") {
            cfg.architecture.l1 = 0.0;
            cfg.architecture.l2 = 0.0;
        }
    } else {
        throw snelfs::ParamError("unknown preset '" + name +
                                 "' (expected small, small-range, 5k or 5k-noreg)");
    }
    return cfg;
}

struct TrainFlags {
    std::string preset;
    std::string config_path;
    std::optional<std::size_t> dim;
    std::optional<double> lr;
    std::optional<std::uint64_t> seed;
    std::string metric; // empty = derive from the task
};

void add_train_flags(CLI::App* cmd, TrainFlags& f) {
    cmd->add_option("--preset", f.preset, "Named setting bundle: small, small-range, 5k, 5k-noreg");
    cmd->add_option("--config", f.config_path, "Training config JSON");
    cmd->add_option("--dim", f.dim, "FS neuron count (overrides preset/config)");
    cmd->add_option("--lr", f.lr, "Adam learning rate (overrides preset/config)");
    cmd->add_option("--train-seed", f.seed, "Training seed (overrides config)");
    cmd->add_option("--metric", f.metric, "accuracy, f1 or neg_mse (default: by task)");
}

snelfs::TrainConfig resolve_train_config(const TrainFlags& f, const snelfs::Task& task) {
    snelfs::TrainConfig cfg = f.preset.empty() ? snelfs::TrainConfig{} : preset_config(f.preset);
    if (f.preset.empty()) {
        cfg.architecture.hidden = {5, 5};
        cfg.architecture.l1 = 0.01;
        cfg.architecture.l2 = 0.01;
    }
    bool metric_given = false;
    if (!f.config_path.empty()) {
        const json j = snelfs::load_json_file(f.config_path);
        metric_given = j.contains("metric");
        snelfs::apply_config_json(cfg, j);
    }
    if (f.dim) cfg.dim = *f.dim;
    if (f.lr) cfg.lr = *f.lr;
    if (f.seed) cfg.seed = *f.seed;
    if (!f.metric.empty()) {
        cfg.metric = snelfs::metric_from_name(f.metric);
        metric_given = true;
    }
    if (!metric_given) {
        cfg.metric = task.is_classification() ? snelfs::Metric::Accuracy : snelfs::Metric::NegMse;
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// data loading shared by `select` and `cv`

struct DataFlags {
    std::string data_path;
    std::string target_col = "target";
    std::string task; // "", "binary", "regression"
    GenOptions gen;
};

void add_data_flags(CLI::App* cmd, DataFlags& d, bool allow_gen) {
    cmd->add_option("--data", d.data_path, "Input CSV");
    cmd->add_option("--target-col", d.target_col, "Target column name");
    cmd->add_option("--task", d.task, "Force task kind: binary or regression");
    if (allow_gen) {
        cmd->add_option("--gen", d.gen.name, "Generate input: xor, madelon, linreg, friedman");
        add_gen_flags(cmd, d.gen);
    }
}

struct LoadedData {
    snelfs::Dataset ds;
    std::optional<snelfs::GeneratedDataset> generated;
    json source;
};

LoadedData load_data(const DataFlags& d) {
    LoadedData out;
    if (!d.data_path.empty() && !d.gen.name.empty()) {
        throw snelfs::ParamError("--data and --gen are mutually exclusive");
    }
    if (!d.data_path.empty()) {
        snelfs::CsvOptions opts;
        opts.target_column = d.target_col;
        if (d.task == "binary") {
            opts.forced_task = snelfs::Task::binary();
        } else if (d.task == "regression") {
            opts.forced_task = snelfs::Task::regression();
        } else if (!d.task.empty()) {
            throw snelfs::ParamError("--task must be binary or regression");
        }
        out.ds = snelfs::load_csv(d.data_path, opts);
        out.source = {{"csv", d.data_path}};
    } else if (!d.gen.name.empty()) {
        out.generated = run_generator(d.gen);
        out.ds = out.generated->data;
        out.source = gen_params_json(d.gen);
    } else {
        throw snelfs::ParamError("one of --data or --gen is required");
    }
    return out;
}

// ---------------------------------------------------------------------------
// subcommands

struct GenCmd {
    GenOptions gen;
    std::string out;
    std::string target_col = "target";
    std::vector<std::string> argv_line;

    int run() const {
        const snelfs::GeneratedDataset g = run_generator(gen);
        snelfs::save_csv(g.data, out, target_col);
        const std::string truth_path = with_suffix(out, ".truth.json");
        snelfs::write_json_file(truth_json(gen, g), truth_path);

        json manifest = manifest_skeleton(argv_line);
        manifest["config"] = gen_params_json(gen);
        manifest["outputs"] = {out, truth_path};
        const std::string manifest_path = with_suffix(out, ".manifest.json");
        snelfs::write_json_file(manifest, manifest_path);

        std::cout << "wrote " << out << " (" << g.data.n_samples() << "x" << g.data.n_features()
                  << ", task " << snelfs::task_name(g.data.task) << ")\n"
                  << "wrote " << truth_path << "\n";
        return 0;
    }
};

struct SelectCmd {
    DataFlags data;
    TrainFlags tf;
    std::string out = "report.json";
    std::optional<std::size_t> top_k;
    std::string measure = "sum_weight";
    std::string seeds_text;
    std::vector<std::string> argv_line;

    int run() const {
        const LoadedData loaded = load_data(data);
        const snelfs::TrainConfig base_cfg = resolve_train_config(tf, loaded.ds.task);
        const snelfs::Measure ms = measure == "max_weight" ? snelfs::Measure::MaxWeight
                                                           : snelfs::Measure::SumWeight;
        if (measure != "sum_weight" && measure != "max_weight") {
            throw snelfs::ParamError("--measure must be sum_weight or max_weight");
        }
        const std::size_t k = top_k.value_or(std::min(base_cfg.dim, loaded.ds.n_features()));

        std::vector<std::uint64_t> seeds{base_cfg.seed};
        if (!seeds_text.empty()) seeds = parse_seeds(seeds_text);

        struct Outcome {
            json report;
            std::vector<snelfs::EpochRecord> history;
        };
        std::vector<Outcome> outcomes(seeds.size());
        run_parallel(seeds.size(), [&](std::size_t i) {
            snelfs::TrainConfig cfg = base_cfg;
            cfg.seed = seeds[i];
            const snelfs::TrainReport rep = snelfs::train(loaded.ds, cfg);
            const auto selected = snelfs::select_top_k(rep.saliency, k, ms);
            json rj = snelfs::train_report_to_json(rep, cfg.metric);
            rj["config"] = snelfs::train_config_to_json(cfg);
            rj["data"] = loaded.source;
            json names = json::array();
            for (std::size_t j : selected) names.push_back(rep.feature_names[j]);
            rj["selected"] = {{"measure", measure},
                              {"top_k", k},
                              {"features", selected},
                              {"names", names}};
            outcomes[i] = {std::move(rj), rep.history};
        });

        std::vector<std::string> outputs;
        const bool single = seeds.size() == 1;
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            const std::string report_path = single ? out : seed_variant(out, seeds[i]);
            const std::string history_path = with_suffix(report_path, ".history.csv");
            snelfs::write_json_file(outcomes[i].report, report_path);
            snelfs::write_history_csv(outcomes[i].history, history_path);
            outputs.push_back(report_path);
            outputs.push_back(history_path);
        }
        if (!single) {
            json summary;
            summary["seeds"] = seeds;
            json runs = json::array();
            for (std::size_t i = 0; i < seeds.size(); ++i) {
                json r;
                r["seed"] = seeds[i];
                r["best"] = outcomes[i].report["best"];
                r["no_admissible_model"] = outcomes[i].report["no_admissible_model"];
                r["selected"] = outcomes[i].report["selected"];
                r["report"] = seed_variant(out, seeds[i]);
                runs.push_back(std::move(r));
            }
            summary["runs"] = std::move(runs);
            snelfs::write_json_file(summary, out);
            outputs.push_back(out);
        }
        if (loaded.generated) {
            const std::string truth_path = with_suffix(out, ".truth.json");
            snelfs::write_json_file(truth_json(data.gen, *loaded.generated), truth_path);
            outputs.push_back(truth_path);
        }

        json manifest = manifest_skeleton(argv_line);
        manifest["config"] = snelfs::train_config_to_json(base_cfg);
        manifest["config"]["seeds"] = seeds;
        manifest["config"]["top_k"] = k;
        manifest["config"]["measure"] = measure;
        manifest["data"] = loaded.source;
        manifest["outputs"] = outputs;
        snelfs::write_json_file(manifest, with_suffix(out, ".manifest.json"));

        for (std::size_t i = 0; i < seeds.size(); ++i) {
            const json& rj = outcomes[i].report;
            std::cout << "seed " << seeds[i] << ": val_" << rj["metric"].get<std::string>() << " "
                      << rj["best"]["val_metric"].get<double>();
            if (rj["no_admissible_model"].get<bool>()) std::cout << " [no admissible model]";
            std::cout << "\n";
        }
        std::cout << "wrote " << out << "\n";
        return 0;
    }
};

// Rankings straight from a written report: the features array is in
// sum-weight order, max-weight order is recovered from the scores.
std::vector<std::size_t> ranking_from_report(const json& report, const std::string& measure) {
    const json& feats = report.at("saliency").at("features");
    std::vector<std::size_t> order;
    order.reserve(feats.size());
    if (measure == "sum_weight") {
        for (const json& f : feats) order.push_back(f.at("index").get<std::size_t>());
        return order;
    }
    snelfs::Vector scores(feats.size(), 0.0);
    for (const json& f : feats) {
        scores.at(f.at("index").get<std::size_t>()) = f.at("max_weight").get<double>();
    }
    return snelfs::rank_descending(scores);
}

struct SuccessCmd {
    std::string report_path;
    std::string truth_path;
    std::size_t top_k = 0;
    std::string measure = "sum_weight";
    std::string out;
    std::vector<std::string> argv_line;

    int run() const {
        if (measure != "sum_weight" && measure != "max_weight") {
            throw snelfs::ParamError("--measure must be sum_weight or max_weight");
        }
        const json report = snelfs::load_json_file(report_path);
        const json truth = snelfs::load_json_file(truth_path);
        if (!report.contains("saliency") || !report.contains("n_features")) {
            throw snelfs::DataError("success: '" + report_path + "' is not a selection report");
        }
        if (!truth.contains("true_features") || !truth.contains("n_features")) {
            throw snelfs::DataError("success: '" + truth_path + "' is not a truth sidecar");
        }
        const auto m_report = report.at("n_features").get<std::size_t>();
        const auto m_truth = truth.at("n_features").get<std::size_t>();
        if (m_report != m_truth) {
            throw snelfs::DataError("success: report has " + std::to_string(m_report) +
                                    " features but truth describes " + std::to_string(m_truth));
        }
        const auto true_features = truth.at("true_features").get<std::vector<std::size_t>>();
        const auto ranking = ranking_from_report(report, measure);
        const double suc =
            snelfs::success_from_ranking(ranking, top_k, true_features, m_report);

        json result;
        result["top_k"] = top_k;
        result["measure"] = measure;
        result["true_features"] = true_features;
        result["selected"] = std::vector<std::size_t>(ranking.begin(),
                                                      ranking.begin() +
                                                          static_cast<std::ptrdiff_t>(top_k));
        result["success"] = suc;
        std::cout << "Suc = " << suc << "\n";
        if (!out.empty()) {
            snelfs::write_json_file(result, out);
            json manifest = manifest_skeleton(argv_line);
            manifest["config"] = {{"report", report_path},
                                  {"truth", truth_path},
                                  {"top_k", top_k},
                                  {"measure", measure}};
            manifest["outputs"] = {out};
            snelfs::write_json_file(manifest, with_suffix(out, ".manifest.json"));
        }
        return 0;
    }
};

struct CvCmd {
    DataFlags data;
    TrainFlags tf;
    std::string method = "snel";
    std::string classifier = "knn";
    std::size_t k_folds = 0; // 0 = by task: 10 binary, 5 multiclass
    std::size_t n_select = 15;
    std::uint64_t seed = 0;
    std::string seeds_text;
    std::string measure = "sum_weight";
    std::string out;
    std::vector<std::string> argv_line;

    snelfs::FsMethod make_method(const snelfs::TrainConfig& base_cfg, std::uint64_t cv_seed) const {
        const snelfs::Measure ms = measure == "max_weight" ? snelfs::Measure::MaxWeight
                                                           : snelfs::Measure::SumWeight;
        if (method == "snel") {
            auto counter = std::make_shared<std::size_t>(0);
            return [base_cfg, cv_seed, ms, counter](const snelfs::Dataset& fold_train) {
                snelfs::TrainConfig cfg = base_cfg;
                cfg.seed = cv_seed * 1000003ULL + (*counter)++;
                const snelfs::TrainReport rep = snelfs::train(fold_train, cfg);
                return ms == snelfs::Measure::SumWeight ? rep.saliency.ranking_sum
                                                        : rep.saliency.ranking_max;
            };
        }
        if (method == "fscore") {
            return [](const snelfs::Dataset& fold_train) {
                return snelfs::rank_descending(snelfs::fisher_score(fold_train));
            };
        }
        if (method == "random") {
            auto counter = std::make_shared<std::size_t>(0);
            return [cv_seed, counter](const snelfs::Dataset& fold_train) {
                std::mt19937_64 rng(cv_seed * 1000003ULL + (*counter)++);
                std::vector<std::size_t> order(fold_train.n_features());
                std::iota(order.begin(), order.end(), std::size_t{0});
                std::shuffle(order.begin(), order.end(), rng);
                return order;
            };
        }
        throw snelfs::ParamError("--method must be snel, fscore or random");
    }

    int run() const {
        const LoadedData loaded = load_data(data);
        if (!loaded.ds.task.is_classification()) {
            throw snelfs::ParamError("cv: classification datasets only");
        }
        const snelfs::Classifier clf = [&] {
            if (classifier == "knn") return snelfs::Classifier::Knn;
            if (classifier == "gnb") return snelfs::Classifier::Gnb;
            throw snelfs::ParamError("--classifier must be knn or gnb");
        }();
        const std::size_t folds =
            k_folds != 0 ? k_folds : (loaded.ds.task.kind == snelfs::TaskKind::Binary ? 10 : 5);
        const snelfs::TrainConfig base_cfg = resolve_train_config(tf, loaded.ds.task);

        std::vector<std::uint64_t> seeds{seed};
        if (!seeds_text.empty()) seeds = parse_seeds(seeds_text);

        std::vector<snelfs::CvResult> results(seeds.size());
        run_parallel(seeds.size(), [&](std::size_t i) {
            snelfs::CvSpec spec;
            spec.k = folds;
            spec.seed = seeds[i];
            spec.stratified = true;
            results[i] = snelfs::cv_f1(loaded.ds, make_method(base_cfg, seeds[i]), n_select, clf,
                                       spec);
        });

        json runs = json::array();
        double mean_of_means = 0.0;
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            json r;
            r["seed"] = seeds[i];
            r["fold_scores"] = results[i].fold_scores;
            r["mean"] = results[i].mean;
            r["std"] = results[i].stddev;
            r["fold_selected"] = results[i].fold_selected;
            runs.push_back(std::move(r));
            mean_of_means += results[i].mean;
            std::cout << "seed " << seeds[i] << ": F1 " << results[i].mean << " +- "
                      << results[i].stddev << "\n";
        }
        mean_of_means /= static_cast<double>(seeds.size());
        std::cout << "mean F1 over seeds: " << mean_of_means << "\n";

        json result;
        result["method"] = method;
        result["classifier"] = classifier;
        result["k_folds"] = folds;
        result["n_select"] = n_select;
        result["seeds"] = seeds;
        result["runs"] = std::move(runs);
        result["mean_f1"] = mean_of_means;
        if (!out.empty()) {
            snelfs::write_json_file(result, out);
            json manifest = manifest_skeleton(argv_line);
            manifest["config"] = {{"method", method},   {"classifier", classifier},
                                  {"k_folds", folds},   {"n_select", n_select},
                                  {"seeds", seeds},     {"measure", measure},
                                  {"train", snelfs::train_config_to_json(base_cfg)}};
            manifest["data"] = loaded.source;
            manifest["outputs"] = {out};
            snelfs::write_json_file(manifest, with_suffix(out, ".manifest.json"));
        }
        return 0;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SNeL-FS: neural-network feature selection with a sparse selection layer"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::vector<std::string> argv_line(argv, argv + argc);

    GenCmd gen_cmd;
    gen_cmd.argv_line = argv_line;
    CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic dataset CSV + truth sidecar");
    gen->add_option("generator", gen_cmd.gen.name, "xor, madelon, linreg or friedman")->required();
    add_gen_flags(gen, gen_cmd.gen);
    gen->add_option("--out", gen_cmd.out, "Output CSV path")->required();
    gen->add_option("--target-col", gen_cmd.target_col, "Target column name");

    SelectCmd select_cmd;
    select_cmd.argv_line = argv_line;
    CLI::App* select = app.add_subcommand("select", "Train the FS network and rank features");
    add_data_flags(select, select_cmd.data, true);
    add_train_flags(select, select_cmd.tf);
    select->add_option("--out", select_cmd.out, "Report JSON path");
    select->add_option("--top-k", select_cmd.top_k, "Selected feature count (default: dim)");
    select->add_option("--measure", select_cmd.measure, "sum_weight or max_weight");
    select->add_option("--seeds", select_cmd.seeds_text, "Seed fan-out: '1..5' or '1,4,9'");

    SuccessCmd success_cmd;
    success_cmd.argv_line = argv_line;
    CLI::App* success = app.add_subcommand("success", "Score a report against a truth sidecar");
    success->add_option("--report", success_cmd.report_path, "Selection report JSON")->required();
    success->add_option("--truth", success_cmd.truth_path, "Truth sidecar JSON")->required();
    success->add_option("--top-k", success_cmd.top_k, "Selected feature count")->required();
    success->add_option("--measure", success_cmd.measure, "sum_weight or max_weight");
    success->add_option("--out", success_cmd.out, "Result JSON path");

    CvCmd cv_cmd;
    cv_cmd.argv_line = argv_line;
    CLI::App* cv = app.add_subcommand("cv", "Cross-validated F1 with FS inside the loop");
    add_data_flags(cv, cv_cmd.data, true);
    add_train_flags(cv, cv_cmd.tf);
    cv->add_option("--method", cv_cmd.method, "snel, fscore or random");
    cv->add_option("--classifier", cv_cmd.classifier, "knn or gnb");
    cv->add_option("--k-folds", cv_cmd.k_folds, "Fold count (default: 10 binary, 5 multiclass)");
    cv->add_option("--n-select", cv_cmd.n_select, "Features kept per fold");
    cv->add_option("--cv-seed", cv_cmd.seed, "CV fold/run seed");
    cv->add_option("--seeds", cv_cmd.seeds_text, "Seed fan-out: '1..5' or '1,4,9'");
    cv->add_option("--measure", cv_cmd.measure, "sum_weight or max_weight (snel method)");
    cv->add_option("--out", cv_cmd.out, "Result JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(gen)) return gen_cmd.run();
        if (app.got_subcommand(select)) return select_cmd.run();
        if (app.got_subcommand(success)) return success_cmd.run();
        if (app.got_subcommand(cv)) return cv_cmd.run();
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const snelfs::ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const snelfs::ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const snelfs::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
