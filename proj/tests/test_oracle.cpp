#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "treebench/environments.hpp"
#include "treebench/oracle.hpp"

using namespace treebench;

TEST_CASE("chain(3) enumerates the full decision tree") {
    ChainEnv env({3, ChainActionScheme::kFixedZero, 0});
    const auto rep = enumerate(env, env.reset(0), 10, 1.0, false);
    CHECK(rep.node_count == 7);
    CHECK(rep.terminating_trace_count == 4);
    CHECK(rep.optimal_return == 1.0);
    CHECK(rep.optimal_first_action == std::vector<int>{0});
    CHECK_FALSE(rep.depth_capped);
}

TEST_CASE("chain(N) has N+1 terminating traces and 2N+1 nodes") {
    for (int n = 2; n <= 12; ++n) {
        CAPTURE(n);
        ChainEnv env({n, ChainActionScheme::kSeedHashed, 17});
        const auto rep = enumerate(env, env.reset(0), n + 5, 1.0, false);
        CHECK(rep.terminating_trace_count == n + 1);
        CHECK(rep.node_count == 2 * n + 1);
        CHECK(rep.optimal_return == 1.0);
        CHECK(rep.optimal_first_action == std::vector<int>{env.correct_action(1)});
    }
}

TEST_CASE("chain(3) discounted optimum is gamma^2") {
    ChainEnv env({3, ChainActionScheme::kFixedZero, 0});
    const auto rep = enumerate(env, env.reset(0), 10, 0.5, false);
    CHECK(rep.optimal_return == 0.25);
}

TEST_CASE("depth cap truncates branches and is flagged") {
    ChainEnv env({3, ChainActionScheme::kFixedZero, 0});

    SUBCASE("cap 1: only the root's children") {
        const auto rep = enumerate(env, env.reset(0), 1, 1.0, false);
        CHECK(rep.node_count == 3);
        CHECK(rep.terminating_trace_count == 1);
        CHECK(rep.optimal_return == 0.0);
        CHECK(rep.depth_capped);
    }
    SUBCASE("cap 2: reward still out of reach") {
        const auto rep = enumerate(env, env.reset(0), 2, 1.0, false);
        CHECK(rep.node_count == 5);
        CHECK(rep.terminating_trace_count == 2);
        CHECK(rep.optimal_return == 0.0);
        CHECK(rep.optimal_first_action == std::vector<int>{0, 1});
        CHECK(rep.depth_capped);
    }
    SUBCASE("cap 3: every leaf is a terminal transition, no cap hit") {
        const auto rep = enumerate(env, env.reset(0), 3, 1.0, false);
        CHECK(rep.node_count == 7);
        CHECK(rep.optimal_return == 1.0);
        CHECK_FALSE(rep.depth_capped);
    }
}

TEST_CASE("loop-aware cyclic chain matches the acyclic chain's tree") {
    for (int n = 2; n <= 6; ++n) {
        CAPTURE(n);
        CyclicChainEnv env({n, ChainActionScheme::kSeedHashed, 3});
        const auto rep = enumerate(env, env.reset(0), 4 * n, 1.0, true);
        CHECK(rep.node_count == 2 * n + 1);
        CHECK(rep.terminating_trace_count == 1);  // only the goal transition terminates
        CHECK(rep.optimal_return == 1.0);
        CHECK(rep.optimal_first_action == std::vector<int>{env.correct_action(1)});
    }
}

TEST_CASE("cyclic chain without loop pruning blows past the node limit") {
    CyclicChainEnv env({3, ChainActionScheme::kFixedZero, 0});
    CHECK_THROWS_AS(enumerate(env, env.reset(0), 40, 1.0, false, 2000), LimitExceeded);
}

TEST_CASE("gridlake 4x4 optimum, loop-aware") {
    GridLakeEnv env(parse_grid_map(kGridLake4x4));
    SUBCASE("undiscounted") {
        const auto rep = enumerate(env, env.reset(0), 30, 1.0, true);
        CHECK(rep.optimal_return == 1.0);
        CHECK(rep.terminating_trace_count >= 1);
        CHECK_FALSE(rep.depth_capped);
    }
    SUBCASE("gamma 0.5 pays for the 6-step shortest path") {
        const auto rep = enumerate(env, env.reset(0), 30, 0.5, true);
        CHECK(rep.optimal_return == 0.03125);  // 0.5^5
    }
}

TEST_CASE("cartpole enumeration to a 12-step horizon") {
    CartPoleEnv env;
    const auto rep = enumerate(env, StateVector::zeros(4), 12, 1.0, false);
    // a surviving 12-step sequence exists from the balanced start
    CHECK(rep.optimal_return == doctest::Approx(12 * 0.005).epsilon(1e-12));
    CHECK(rep.depth_capped);
    // some all-one-side branches fail early, so the tree is not complete
    CHECK(rep.node_count < 8191);
    CHECK(rep.node_count > 1000);
}

TEST_CASE("cartpole enumeration refuses to exceed the node limit") {
    CartPoleEnv env;
    CHECK_THROWS_AS(enumerate(env, StateVector::zeros(4), 12, 1.0, false, 100), LimitExceeded);
}

TEST_CASE("argument contracts") {
    ChainEnv env({3, ChainActionScheme::kFixedZero, 0});
    const StateVector s = env.reset(0);
    CHECK_THROWS_AS(enumerate(env, s, 0, 1.0, false), ContractViolation);
    CHECK_THROWS_AS(enumerate(env, s, 5, 0.0, false), ContractViolation);
    CHECK_THROWS_AS(enumerate(env, s, 5, 1.5, false), ContractViolation);
    CHECK_THROWS_AS(enumerate(env, s, 5, 1.0, false, 0), ContractViolation);
}
