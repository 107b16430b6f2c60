#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snelfs/matrix.hpp"

namespace snelfs {

enum class TaskKind { Binary, Multiclass, Regression };

struct Task {
    TaskKind kind = TaskKind::Binary;
    std::size_t classes = 2; // meaningful for Multiclass only

    bool is_classification() const { return kind != TaskKind::Regression; }
    std::size_t class_count() const { return kind == TaskKind::Binary ? 2 : classes; }

    static Task binary() { return {TaskKind::Binary, 2}; }
    static Task multiclass(std::size_t k) { return {TaskKind::Multiclass, k}; }
    static Task regression() { return {TaskKind::Regression, 0}; }
};

std::string task_name(const Task& task);
Task task_from_name(const std::string& name, std::size_t classes = 0);

/// Supervised dataset: n x m feature matrix, n targets.
struct Dataset {
    Matrix x;
    Vector y;
    std::vector<std::string> feature_names;
    Task task;

    std::size_t n_samples() const { return x.rows; }
    std::size_t n_features() const { return x.cols; }
};

/// Throws DataError if the dataset breaks its invariants (shape agreement,
/// finite entries, labels in range with every class present).
void validate(const Dataset& ds);

std::vector<std::string> default_feature_names(std::size_t m);

/// Per-column affine transform fitted so that each column maps to mean 0
/// and population (1/n) standard deviation 1.
struct Standardizer {
    Vector means;
    Vector stds;                          // strictly positive
    std::vector<std::size_t> constant_features; // columns whose std was clamped to 1
};

Standardizer standardize_fit(const Matrix& x);
Matrix standardize_apply(const Standardizer& std, const Matrix& x);
Matrix standardize_invert(const Standardizer& std, const Matrix& x);

struct SplitSpec {
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
    bool stratified = true;
};

struct SplitResult {
    Dataset train;
    Dataset val;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> val_indices;
    std::vector<std::string> warnings;
};

/// Deterministic train/validation split. Stratified splits keep every class
/// represented in the training part; a single-sample class goes to training
/// with a warning.
SplitResult split(const Dataset& ds, const SplitSpec& spec);

/// Dataset restricted to the given rows (order preserved).
Dataset take_rows(const Dataset& ds, const std::vector<std::size_t>& indices);
/// Dataset restricted to the given feature columns (order preserved).
Dataset take_columns(const Dataset& ds, const std::vector<std::size_t>& indices);

} // namespace snelfs
