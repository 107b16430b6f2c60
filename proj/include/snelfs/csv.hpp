#pragma once

#include <optional>
#include <string>

#include "snelfs/dataset.hpp"

namespace snelfs {

struct CsvOptions {
    std::string target_column = "target";
    std::optional<Task> forced_task;  // overrides inference when set
    std::size_t class_cap = 20;       // integer targets with <= this many levels => classification
};

struct CsvLoadReport {
    std::vector<std::string> warnings;
    // Original target values for remapped classification labels, index = new label.
    std::vector<double> class_labels;
};

/// Loads a comma-separated file with a header row into a Dataset. The task is
/// inferred from the target column unless forced. Classification labels are
/// remapped onto 0..k-1 in ascending value order when needed.
Dataset load_csv(const std::string& path, const CsvOptions& options = {},
                 CsvLoadReport* report = nullptr);

/// Writes the dataset with a header row. Round-trips through load_csv.
void save_csv(const Dataset& ds, const std::string& path,
              const std::string& target_column = "target");

} // namespace snelfs
