#pragma once

#include <cstddef>
#include <vector>

#include "snelfs/error.hpp"

namespace snelfs {

// Cyclic schedule for one penalty multiplier. One cycle is a triangular sweep:
// `steps` linearly spaced values from min_value up to max_value, then the exact
// mirror back down, so a cycle contributes 2*steps stages.
struct CyclicSpec {
    double min_value = 0.01;
    double max_value = 0.2;
    std::size_t steps = 38;
    std::size_t cycles = 1;
};

// Ascending linspace(min,max,steps) followed by its mirror; length 2*steps.
// steps == 1 degenerates to {min, min}.
std::vector<double> triangular_cycle(double min_value, double max_value, std::size_t steps);

// `cycles` concatenated triangular cycles; length 2*steps*cycles.
std::vector<double> multiplier_sequence(const CyclicSpec& spec);

struct Stage {
    double lambda_s = 0.0;
    double lambda_a = 0.0;
};

// Full two-multiplier schedule. A stage is one (lambda_s, lambda_a) pair and
// is trained for epochs_per_stage epochs.
struct CyclicSchedule {
    CyclicSpec lambda_s;
    CyclicSpec lambda_a;
    std::size_t epochs_per_stage = 1;
};

// Nested sweep: for every lambda_s value the lambda_a sequence runs in full.
// Stage count is 2*steps_s*cycles_s * 2*steps_a*cycles_a.
std::vector<Stage> stage_sequence(const CyclicSpec& lambda_s, const CyclicSpec& lambda_a);
std::vector<Stage> stage_sequence(const CyclicSchedule& sched);

std::size_t stage_count(const CyclicSchedule& sched);

} // namespace snelfs
