#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "snelfs/train.hpp"

namespace snelfs {

using json = nlohmann::json;

// Features ordered by the sum-weight ranking, both scores per feature.
json saliency_to_json(const SaliencyReport& saliency, const std::vector<std::string>& names);

// Summary without weights or history; the history goes to its own CSV.
json train_report_to_json(const TrainReport& report, Metric metric);

// Overlays present keys onto cfg; unknown keys are rejected. Keys: dim, lr,
// seed, metric, penalty_limit, batch_size ("auto" | "full" | count), hidden,
// l1, l2, schedule{lambda_s{min,max,steps,cycles}, lambda_a{...},
// epochs_per_stage}.
void apply_config_json(TrainConfig& cfg, const json& j);

TrainConfig train_config_from_json(const json& j);
json train_config_to_json(const TrainConfig& cfg);

void write_history_csv(const std::vector<EpochRecord>& history, const std::string& path);

json load_json_file(const std::string& path);
void write_json_file(const json& j, const std::string& path);

} // namespace snelfs
