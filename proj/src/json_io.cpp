#include "snelfs/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>

namespace snelfs {

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ParamError("config: " + where + " must be an object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) throw ParamError("config: unknown key '" + key + "' in " + where);
    }
}

CyclicSpec spec_from_json(const json& j, CyclicSpec base, const std::string& where) {
    check_keys(j, {"min", "max", "steps", "cycles"}, where);
    base.min_value = j.value("min", base.min_value);
    base.max_value = j.value("max", base.max_value);
    base.steps = j.value("steps", base.steps);
    base.cycles = j.value("cycles", base.cycles);
    return base;
}

json spec_to_json(const CyclicSpec& spec) {
    return {{"min", spec.min_value},
            {"max", spec.max_value},
            {"steps", spec.steps},
            {"cycles", spec.cycles}};
}

} // namespace

json saliency_to_json(const SaliencyReport& saliency, const std::vector<std::string>& names) {
    if (names.size() != saliency.sum_weight.size()) {
        throw ShapeError("saliency: feature name count does not match score count");
    }
    json features = json::array();
    for (std::size_t j : saliency.ranking_sum) {
        features.push_back({{"name", names[j]},
                            {"index", j},
                            {"sum_weight", saliency.sum_weight[j]},
                            {"max_weight", saliency.max_weight[j]}});
    }
    return {{"features", features},
            {"excluded_neurons", saliency.excluded_neurons},
            {"duplicate_selections", saliency.duplicate_selections}};
}

json train_report_to_json(const TrainReport& report, Metric metric) {
    json j;
    j["task"] = task_name(report.task);
    j["metric"] = metric_name(metric);
    j["n_features"] = report.n_features;
    j["epochs_executed"] = report.epochs_executed;
    j["no_admissible_model"] = report.no_admissible_model;
    j["warnings"] = report.warnings;
    j["best"] = {{"val_metric", report.best.val_metric},
                 {"val_objective", report.best.val_objective},
                 {"avg_penalty_s", report.best.avg_penalty_s},
                 {"avg_penalty_a", report.best.avg_penalty_a},
                 {"stage_index", report.best.stage_index},
                 {"epoch_index", report.best.epoch_index}};
    j["saliency"] = saliency_to_json(report.saliency, report.feature_names);
    return j;
}

void apply_config_json(TrainConfig& cfg, const json& j) {
    check_keys(j,
               {"dim", "lr", "seed", "metric", "penalty_limit", "batch_size", "hidden", "l1", "l2",
                "schedule"},
               "config");
    cfg.dim = j.value("dim", cfg.dim);
    cfg.lr = j.value("lr", cfg.lr);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("metric")) cfg.metric = metric_from_name(j.at("metric").get<std::string>());
    cfg.penalty_limit = j.value("penalty_limit", cfg.penalty_limit);
    if (j.contains("batch_size")) {
        const json& b = j.at("batch_size");
        if (b.is_string()) {
            const auto s = b.get<std::string>();
            if (s == "auto") {
                cfg.batch = BatchSpec::auto_size();
            } else if (s == "full") {
                cfg.batch = BatchSpec::full();
            } else {
                throw ParamError("config: batch_size must be 'auto', 'full' or a count");
            }
        } else if (b.is_number_unsigned()) {
            cfg.batch = BatchSpec::fixed(b.get<std::size_t>());
        } else {
            throw ParamError("config: batch_size must be 'auto', 'full' or a count");
        }
    }
    if (j.contains("hidden")) {
        cfg.architecture.hidden = j.at("hidden").get<std::vector<std::size_t>>();
    }
    cfg.architecture.l1 = j.value("l1", cfg.architecture.l1);
    cfg.architecture.l2 = j.value("l2", cfg.architecture.l2);
    if (j.contains("schedule")) {
        const json& s = j.at("schedule");
        check_keys(s, {"lambda_s", "lambda_a", "epochs_per_stage"}, "schedule");
        if (s.contains("lambda_s")) {
            cfg.schedule.lambda_s =
                spec_from_json(s.at("lambda_s"), cfg.schedule.lambda_s, "lambda_s");
        }
        if (s.contains("lambda_a")) {
            cfg.schedule.lambda_a =
                spec_from_json(s.at("lambda_a"), cfg.schedule.lambda_a, "lambda_a");
        }
        cfg.schedule.epochs_per_stage = s.value("epochs_per_stage", cfg.schedule.epochs_per_stage);
    }
}

TrainConfig train_config_from_json(const json& j) {
    TrainConfig cfg;
    apply_config_json(cfg, j);
    return cfg;
}

json train_config_to_json(const TrainConfig& cfg) {
    json j;
    j["dim"] = cfg.dim;
    j["lr"] = cfg.lr;
    j["seed"] = cfg.seed;
    j["metric"] = metric_name(cfg.metric);
    j["penalty_limit"] = cfg.penalty_limit;
    switch (cfg.batch.mode) {
    case BatchSpec::Mode::Auto: j["batch_size"] = "auto"; break;
    case BatchSpec::Mode::Full: j["batch_size"] = "full"; break;
    case BatchSpec::Mode::Fixed: j["batch_size"] = cfg.batch.size; break;
    }
    j["hidden"] = cfg.architecture.hidden;
    j["l1"] = cfg.architecture.l1;
    j["l2"] = cfg.architecture.l2;
    j["schedule"] = {{"lambda_s", spec_to_json(cfg.schedule.lambda_s)},
                     {"lambda_a", spec_to_json(cfg.schedule.lambda_a)},
                     {"epochs_per_stage", cfg.schedule.epochs_per_stage}};
    return j;
}

void write_history_csv(const std::vector<EpochRecord>& history, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("history: cannot write '" + path + "'");
    out << "epoch,stage,lambda_s,lambda_a,train_loss,omega_s,omega_a,val_metric\n";
    char buf[64];
    const auto put = [&](double v, char sep) {
        const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
        out.write(buf, len);
        out << sep;
    };
    for (const EpochRecord& r : history) {
        out << r.epoch_index << ',' << r.stage_index << ',';
        put(r.lambda_s, ',');
        put(r.lambda_a, ',');
        put(r.train_loss, ',');
        put(r.omega_s, ',');
        put(r.omega_a, ',');
        put(r.val_metric, '\n');
    }
    if (!out) throw DataError("history: write to '" + path + "' failed");
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("json: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw DataError("json: parse failure in '" + path + "': " + e.what());
    }
    return j;
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("json: cannot write '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out) throw DataError("json: write to '" + path + "' failed");
}

} // namespace snelfs
