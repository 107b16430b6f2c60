#pragma once

#include <cstdint>
#include <vector>

#include "snelfs/dataset.hpp"

namespace snelfs {

/// A generated dataset together with the indices of the features that
/// actually drive the target. For generators with ordered roles (linreg
/// coefficients, friedman terms) true_features is in role order.
struct GeneratedDataset {
    Dataset data;
    std::vector<std::size_t> true_features;
    Vector coefficients; // linreg only: beta per true feature, role order
};

struct MadelonParams {
    std::uint64_t seed = 0;
    std::size_t n_samples = 200;
    std::size_t n_features = 500;
    std::size_t n_informative = 5;
    std::size_t clusters_per_class = 4;
    double vertex_scale = 2.0;
    double cluster_std = 1.0;
};

/// Binary classification: Gaussian clusters centered on hypercube vertices in
/// the informative subspace, half the clusters per class; the remaining
/// features are standard normal noise. Informative columns are shuffled into
/// random positions.
GeneratedDataset gen_madelon(const MadelonParams& params);

/// Binary classification: all features Bernoulli(0.5) in {0,1}; the target is
/// the XOR of two designated features.
GeneratedDataset gen_xor(std::uint64_t seed, std::size_t n_samples, std::size_t n_features);

struct LinregParams {
    std::uint64_t seed = 0;
    std::size_t n_samples = 200;
    std::size_t n_features = 500;
    std::size_t n_informative = 5;
    double noise_std = 0.0;
};

/// Regression: standard normal inputs, target a random linear combination of
/// n_informative columns with coefficients uniform on [1, 100], plus noise.
GeneratedDataset gen_linreg(const LinregParams& params);

/// The Friedman #1 response surface.
double friedman1(double x1, double x2, double x3, double x4, double x5);

/// Regression: inputs uniform on [0,1], target friedman1 over five designated
/// columns plus Gaussian noise.
GeneratedDataset gen_friedman(std::uint64_t seed, std::size_t n_samples, std::size_t n_features,
                              double noise_std = 0.0);

} // namespace snelfs
