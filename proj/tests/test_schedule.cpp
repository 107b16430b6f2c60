#include "doctest.h"

#include "snelfs/schedule.hpp"

using namespace snelfs;

TEST_CASE("triangular cycle sweeps up then mirrors down") {
    auto cycle = triangular_cycle(0.01, 0.10, 4);
    REQUIRE(cycle.size() == 8);
    CHECK(cycle[0] == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(cycle[1] == doctest::Approx(0.04).epsilon(1e-15));
    CHECK(cycle[2] == doctest::Approx(0.07).epsilon(1e-15));
    CHECK(cycle[3] == 0.10); // endpoint pinned exactly
    for (std::size_t i = 0; i < 4; ++i) CHECK(cycle[4 + i] == cycle[3 - i]);
}

TEST_CASE("degenerate one-step cycle holds the minimum") {
    auto cycle = triangular_cycle(0.05, 0.2, 1);
    REQUIRE(cycle.size() == 2);
    CHECK(cycle[0] == 0.05);
    CHECK(cycle[1] == 0.05);
}

TEST_CASE("multiplier sequence repeats the cycle") {
    CyclicSpec spec{.min_value = 0.0, .max_value = 1.0, .steps = 2, .cycles = 3};
    auto seq = multiplier_sequence(spec);
    REQUIRE(seq.size() == 12);
    for (std::size_t c = 0; c < 3; ++c) {
        CHECK(seq[4 * c + 0] == 0.0);
        CHECK(seq[4 * c + 1] == 1.0);
        CHECK(seq[4 * c + 2] == 1.0);
        CHECK(seq[4 * c + 3] == 0.0);
    }
}

TEST_CASE("stage sequence nests the second multiplier inside the first") {
    CyclicSpec ls{.min_value = 0.1, .max_value = 0.2, .steps = 1, .cycles = 1};
    CyclicSpec la{.min_value = 0.3, .max_value = 0.4, .steps = 2, .cycles = 1};
    auto stages = stage_sequence(ls, la);
    REQUIRE(stages.size() == 8); // 2*1 * 2*2

    // lambda_s is piecewise constant over full lambda_a sweeps.
    for (std::size_t i = 0; i < 4; ++i) CHECK(stages[i].lambda_s == 0.1);
    for (std::size_t i = 4; i < 8; ++i) CHECK(stages[i].lambda_s == 0.1); // steps=1 holds min

    CHECK(stages[0].lambda_a == 0.3);
    CHECK(stages[1].lambda_a == 0.4);
    CHECK(stages[2].lambda_a == 0.4);
    CHECK(stages[3].lambda_a == 0.3);
    CHECK(stages[4].lambda_a == 0.3); // the inner sweep restarts

    // The very first stage uses both minima.
    CHECK(stages.front().lambda_s == ls.min_value);
    CHECK(stages.front().lambda_a == la.min_value);
}

TEST_CASE("stage counts for the reference configurations") {
    // One cycle each, 4 and 3 steps: 8 * 6.
    CyclicSpec s1{.min_value = 0.01, .max_value = 0.2, .steps = 4, .cycles = 1};
    CyclicSpec a1{.min_value = 0.01, .max_value = 0.2, .steps = 3, .cycles = 1};
    CHECK(stage_sequence(s1, a1).size() == 48);

    // 19 steps, 1 and 2 cycles: 38 * 76.
    CyclicSpec s2{.min_value = 0.01, .max_value = 0.2, .steps = 19, .cycles = 1};
    CyclicSpec a2{.min_value = 0.01, .max_value = 0.2, .steps = 19, .cycles = 2};
    CHECK(stage_sequence(s2, a2).size() == 2888);

    // The full sweep: 38 steps, lambda_a cycling twice per lambda_s value.
    CyclicSchedule sched;
    sched.lambda_s = {.min_value = 0.01, .max_value = 0.2, .steps = 38, .cycles = 1};
    sched.lambda_a = {.min_value = 0.01, .max_value = 0.2, .steps = 38, .cycles = 2};
    CHECK(stage_count(sched) == 11552);
    CHECK(stage_sequence(sched).size() == 11552);
}

TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(triangular_cycle(0.2, 0.1, 4), ParamError);  // max < min
    CHECK_THROWS_AS(triangular_cycle(-0.1, 0.1, 4), ParamError); // negative multiplier
    CHECK_THROWS_AS(triangular_cycle(0.1, 0.2, 0), ParamError);  // no steps
    CHECK_THROWS_AS(multiplier_sequence({.min_value = 0.1, .max_value = 0.2, .steps = 2,
                                         .cycles = 0}),
                    ParamError);

    CyclicSchedule sched;
    sched.epochs_per_stage = 0;
    CHECK_THROWS_AS(stage_sequence(sched), ParamError);

    // Equal endpoints are a valid constant schedule.
    auto flat = triangular_cycle(0.1, 0.1, 3);
    for (double v : flat) CHECK(v == 0.1);
}
