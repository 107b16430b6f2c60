#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "snelfs/dataset.hpp"
#include "snelfs/error.hpp"
#include "snelfs/matrix.hpp"

namespace snelfs {

// Selection outcome on synthetic data with known ground truth. `selected`
// and `true_features` are index sets over the m features.
struct SuccessInputs {
    std::vector<std::size_t> selected;
    std::vector<std::size_t> true_features;
    std::size_t m = 0;
};

// Suc = R_s/R_t - alpha * I_s/I_t with alpha = min(1/2, R_t/I_t), where R_s
// and I_s count selected relevant/irrelevant features. When the selector
// produced a ranking with every relevant feature on top, the caller sets
// `ranked_all_true_first` and the score is exactly 1. With no irrelevant
// features in the dataset alpha degenerates to 1/2 and the I-term to 0.
double index_of_success(const SuccessInputs& s, bool ranked_all_true_first = false);

// Convenience over a full ranking: selects the top_k features and applies
// the all-true-first rule automatically.
double success_from_ranking(const std::vector<std::size_t>& ranking, std::size_t top_k,
                            const std::vector<std::size_t>& true_features, std::size_t m);

double accuracy(const Vector& y_true, const Vector& y_pred);
double mean_squared_error(const Vector& y_true, const Vector& y_pred);

// Binary: F1 of the positive class. Multiclass: per-class F1 averaged with
// support weights. A class with no true and no predicted samples scores 0.
double f1_weighted(const Vector& y_true, const Vector& y_pred, const Task& task);

// Fisher (between-class over within-class scatter) score per feature:
// sum_c n_c*(mu_cj - mu_j)^2 / sum_c n_c*var_cj, denominator floored at
// 1e-9. Classification tasks only.
Vector fisher_score(const Dataset& ds);

// k nearest neighbours by Euclidean distance, majority vote, ties broken by
// the smallest label. Distance ties are resolved by sample index.
Vector knn_predict(const Dataset& train, const Matrix& test_x, std::size_t k = 5);

// Gaussian naive Bayes with per-class feature means/variances (floored at
// 1e-9) and frequency priors; ties broken by the smallest label.
Vector gnb_predict(const Dataset& train, const Matrix& test_x);

enum class Classifier { Knn, Gnb };

struct CvSpec {
    std::size_t k = 10;
    std::uint64_t seed = 0;
    bool stratified = true;
};

// Ranks features on a fold's training data (standardized), best first.
using FsMethod = std::function<std::vector<std::size_t>(const Dataset& fold_train)>;

struct CvResult {
    Vector fold_scores;
    double mean = 0.0;
    double stddev = 0.0; // population std over folds
    std::vector<std::vector<std::size_t>> fold_selected;
};

// Stratified k-fold CV with feature selection inside the loop: per fold,
// standardize on fold-train, rank features on fold-train only, keep the top
// n_select, fit the classifier on the reduced fold-train and score weighted
// F1 on the reduced fold-test.
CvResult cv_f1(const Dataset& ds, const FsMethod& fs_method, std::size_t n_select,
               Classifier classifier, const CvSpec& spec);

// Disjoint fold index sets covering 0..n-1, stratified by label when asked.
std::vector<std::vector<std::size_t>> make_folds(const Dataset& ds, const CvSpec& spec);

} // namespace snelfs
