#include "snelfs/schedule.hpp"

#include <string>

namespace snelfs {

std::vector<double> triangular_cycle(double min_value, double max_value, std::size_t steps) {
    if (steps == 0) throw ParamError("schedule: steps must be >= 1");
    if (min_value < 0.0) throw ParamError("schedule: multiplier values must be non-negative");
    if (max_value < min_value) {
        throw ParamError("schedule: max_value " + std::to_string(max_value) +
                         " below min_value " + std::to_string(min_value));
    }
    std::vector<double> up(steps, min_value);
    if (steps > 1) {
        const double span = max_value - min_value;
        for (std::size_t i = 0; i < steps; ++i) {
            up[i] = min_value + span * static_cast<double>(i) / static_cast<double>(steps - 1);
        }
        up.back() = max_value;
    }
    std::vector<double> cycle(up);
    cycle.insert(cycle.end(), up.rbegin(), up.rend());
    return cycle;
}

std::vector<double> multiplier_sequence(const CyclicSpec& spec) {
    if (spec.cycles == 0) throw ParamError("schedule: cycles must be >= 1");
    const auto cycle = triangular_cycle(spec.min_value, spec.max_value, spec.steps);
    std::vector<double> seq;
    seq.reserve(cycle.size() * spec.cycles);
    for (std::size_t c = 0; c < spec.cycles; ++c) seq.insert(seq.end(), cycle.begin(), cycle.end());
    return seq;
}

std::vector<Stage> stage_sequence(const CyclicSpec& lambda_s, const CyclicSpec& lambda_a) {
    const auto s_values = multiplier_sequence(lambda_s);
    const auto a_values = multiplier_sequence(lambda_a);
    std::vector<Stage> stages;
    stages.reserve(s_values.size() * a_values.size());
    for (double s : s_values) {
        for (double a : a_values) stages.push_back({s, a});
    }
    return stages;
}

std::vector<Stage> stage_sequence(const CyclicSchedule& sched) {
    if (sched.epochs_per_stage == 0) throw ParamError("schedule: epochs_per_stage must be >= 1");
    return stage_sequence(sched.lambda_s, sched.lambda_a);
}

std::size_t stage_count(const CyclicSchedule& sched) {
    return 2 * sched.lambda_s.steps * sched.lambda_s.cycles * 2 * sched.lambda_a.steps *
           sched.lambda_a.cycles;
}

} // namespace snelfs
