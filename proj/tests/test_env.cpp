#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>
#include <set>

#include "treebench/environments.hpp"

using namespace treebench;

TEST_CASE("chain: fixed scheme walks to the goal") {
    ChainEnv env({3, ChainActionScheme::kFixedZero, 0});
    StateVector s = env.reset(42);
    CHECK(s == StateVector{1.0});

    StepOutcome out = env.step(s, 0);
    CHECK(out.next_state == StateVector{2.0});
    CHECK(out.reward == 0.0);
    CHECK_FALSE(out.terminal);

    out = env.step(out.next_state, 0);
    CHECK(out.next_state == StateVector{3.0});

    out = env.step(out.next_state, 0);  // correct action at the end pays 1
    CHECK(out.reward == 1.0);
    CHECK(out.terminal);

    out = env.step(StateVector{2.0}, 1);  // wrong action kills the episode
    CHECK(out.reward == 0.0);
    CHECK(out.terminal);
}

TEST_CASE("chain: hashed scheme is deterministic per seed and varies across seeds") {
    std::set<int> seen;
    for (uint64_t seed = 0; seed < 64; ++seed) {
        ChainEnv env({5, ChainActionScheme::kSeedHashed, seed});
        const int a = env.correct_action(1);
        CHECK(a == env.correct_action(1));  // stable
        seen.insert(a);
    }
    CHECK(seen == std::set<int>{0, 1});

    // both actions occur along a single chain too
    ChainEnv env({40, ChainActionScheme::kSeedHashed, 7});
    std::set<int> along;
    for (int p = 1; p <= 40; ++p) along.insert(env.correct_action(p));
    CHECK(along == std::set<int>{0, 1});
}

TEST_CASE("chain: argument contracts") {
    ChainEnv env({3, ChainActionScheme::kFixedZero, 0});
    CHECK_THROWS_AS(ChainEnv({1, ChainActionScheme::kFixedZero, 0}), ContractViolation);
    CHECK_THROWS_AS(env.step(StateVector{1.0}, 2), ContractViolation);
    CHECK_THROWS_AS(env.step(StateVector{0.0}, 0), ContractViolation);
    CHECK_THROWS_AS(env.step(StateVector{4.0}, 0), ContractViolation);
    CHECK_THROWS_AS(env.step(StateVector{1.5}, 0), ContractViolation);
    CHECK_THROWS_AS(env.step(StateVector{1.0, 2.0}, 0), ContractViolation);
    CHECK_THROWS_AS(env.correct_action(0), ContractViolation);
}

TEST_CASE("cyclic chain: wrong actions restart instead of terminating") {
    CyclicChainEnv env({3, ChainActionScheme::kFixedZero, 0});
    StepOutcome out = env.step(StateVector{2.0}, 1);
    CHECK(out.next_state == StateVector{1.0});
    CHECK(out.reward == 0.0);
    CHECK_FALSE(out.terminal);

    out = env.step(StateVector{3.0}, 0);
    CHECK(out.reward == 1.0);
    CHECK(out.terminal);
    CHECK(env.name() == "cyclic:3");
}

TEST_CASE("gridlake: moves, walls, holes and goal") {
    GridLakeEnv env(parse_grid_map(kGridLake4x4));
    CHECK(env.name() == "gridlake:4x4");
    const StateVector start = env.reset(0);
    CHECK(start == StateVector{0.0, 0.0});

    // off-grid moves leave the state unchanged (the loop source)
    StepOutcome out = env.step(start, 0);  // left from (0,0)
    CHECK(out.next_state == start);
    CHECK_FALSE(out.terminal);
    out = env.step(start, 3);  // up from (0,0)
    CHECK(out.next_state == start);

    out = env.step(StateVector{0.0, 1.0}, 1);  // down into the (1,1) hole
    CHECK(out.terminal);
    CHECK(out.reward == 0.0);

    out = env.step(StateVector{3.0, 2.0}, 2);  // right into the goal
    CHECK(out.terminal);
    CHECK(out.reward == 1.0);

    CHECK_THROWS_AS(env.step(StateVector{1.0, 1.0}, 0), ContractViolation);  // from a hole
    CHECK_THROWS_AS(env.step(StateVector{3.0, 3.0}, 0), ContractViolation);  // from the goal
    CHECK_THROWS_AS(env.step(StateVector{0.5, 0.0}, 0), ContractViolation);
    CHECK_THROWS_AS(env.step(StateVector{-1.0, 0.0}, 0), ContractViolation);
    CHECK_THROWS_AS(env.step(start, 4), ContractViolation);
}

TEST_CASE("grid map parsing") {
    CHECK_THROWS_AS(parse_grid_map(""), ContractViolation);
    CHECK_THROWS_AS(parse_grid_map("SF\nFFF\nFG\n"), ContractViolation);   // ragged
    CHECK_THROWS_AS(parse_grid_map("FF\nFG\n"), ContractViolation);        // no start
    CHECK_THROWS_AS(parse_grid_map("SS\nFG\n"), ContractViolation);        // two starts
    CHECK_THROWS_AS(parse_grid_map("SF\nFF\n"), ContractViolation);        // no goal
    CHECK_THROWS_AS(parse_grid_map("SX\nFG\n"), ContractViolation);        // unknown cell
    CHECK_THROWS_AS(GridLakeEnv(parse_grid_map("SH\nHG\n")), ContractViolation);  // goal walled off

    const GridSpec g = parse_grid_map("SF\nHG\n");
    CHECK(g.rows == 2);
    CHECK(g.cols == 2);
    CHECK(g.start_row == 0);
    CHECK(g.goal_row == 1);
    CHECK(g.goal_col == 1);
}

TEST_CASE("shipped map files match the built-in layouts") {
    const GridSpec a = load_grid_map("../assets/gridlake4x4.txt");
    const GridSpec b = parse_grid_map(kGridLake4x4);
    CHECK(a.rows == b.rows);
    CHECK(a.cols == b.cols);
    CHECK(a.cells == b.cells);

    const GridSpec c = load_grid_map("../assets/gridlake8x8.txt");
    const GridSpec d = parse_grid_map(kGridLake8x8);
    CHECK(c.rows == d.rows);
    CHECK(c.cells == d.cells);

    CHECK_THROWS_AS(load_grid_map("no_such_map.txt"), ContractViolation);
}

TEST_CASE("cartpole: reset range and determinism") {
    CartPoleEnv env;
    const StateVector a = env.reset(3);
    const StateVector b = env.reset(3);
    CHECK(a == b);
    CHECK(a != env.reset(4));
    for (int i = 0; i < 4; ++i) {
        CHECK(a[i] >= -0.05);
        CHECK(a[i] <= 0.05);
    }
}

TEST_CASE("cartpole: one Euler step from rest under a right push") {
    CartPoleEnv env;
    const StepOutcome out = env.step(StateVector::zeros(4), 1);
    // hand-worked dynamics: x_acc = 400/41, theta_acc = -600/41
    CHECK(out.next_state[0] == 0.0);
    CHECK(out.next_state[1] == doctest::Approx(8.0 / 41.0).epsilon(1e-12));
    CHECK(out.next_state[2] == 0.0);
    CHECK(out.next_state[3] == doctest::Approx(-12.0 / 41.0).epsilon(1e-12));
    CHECK(out.reward == 0.005);
    CHECK_FALSE(out.terminal);

    // the left push mirrors it exactly
    const StepOutcome mirror = env.step(StateVector::zeros(4), 0);
    CHECK(mirror.next_state[1] == -out.next_state[1]);
    CHECK(mirror.next_state[3] == -out.next_state[3]);
}

TEST_CASE("cartpole: leaving the envelope fails with the penalty") {
    CartPoleEnv env;
    StateVector s = StateVector::zeros(4);
    s[0] = 2.39;
    s[1] = 10.0;
    const StepOutcome out = env.step(s, 1);
    CHECK(out.terminal);
    CHECK(out.reward == -1.0);

    StateVector failed = StateVector::zeros(4);
    failed[0] = 3.0;
    CHECK_THROWS_AS(env.step(failed, 0), ContractViolation);
    StateVector nan = StateVector::zeros(4);
    nan[2] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(env.step(nan, 0), ContractViolation);
}

TEST_CASE("steps are pure functions of state and action") {
    CartPoleEnv env;
    StateVector s = env.reset(9);
    for (int i = 0; i < 5; ++i) {
        const StepOutcome first = env.step(s, i % 2);
        const StepOutcome again = env.step(s, i % 2);
        CHECK(first.next_state == again.next_state);
        CHECK(first.reward == again.reward);
        if (first.terminal) break;
        s = first.next_state;
    }
}

TEST_CASE("loop thresholds suit each state space") {
    CHECK(ChainEnv({3, ChainActionScheme::kFixedZero, 0}).default_loop_threshold() == 1e-6);
    CHECK(CartPoleEnv().default_loop_threshold() == 1e-3);
}

TEST_CASE("environment factory") {
    CHECK(make_environment("chain:10", 0)->name() == "chain:10");
    CHECK(make_environment("cyclic:25", 1)->name() == "cyclic:25");
    CHECK(make_environment("gridlake:4x4", 0)->name() == "gridlake:4x4");
    CHECK(make_environment("gridlake:8x8", 0)->name() == "gridlake:8x8");
    CHECK(make_environment("gridlake:@../assets/gridlake8x8.txt", 0)->name() == "gridlake:8x8");
    CHECK(make_environment("cartpole", 0)->state_dim() == 4);

    // the scheme suffix picks the correct-action rule
    auto fixed = make_environment("chain:5:fixed", 99);
    CHECK(dynamic_cast<ChainEnv&>(*fixed).correct_action(3) == 0);
    auto hashed = make_environment("chain:5:hashed", 99);
    CHECK_NOTHROW(dynamic_cast<ChainEnv&>(*hashed).correct_action(3));

    CHECK_THROWS_AS(make_environment("chain", 0), ContractViolation);
    CHECK_THROWS_AS(make_environment("chain:x", 0), ContractViolation);
    CHECK_THROWS_AS(make_environment("chain:5:banana", 0), ContractViolation);
    CHECK_THROWS_AS(make_environment("gridlake:9x9", 0), ContractViolation);
    CHECK_THROWS_AS(make_environment("cartpole:fast", 0), ContractViolation);
    CHECK_THROWS_AS(make_environment("pacman", 0), ContractViolation);
}
