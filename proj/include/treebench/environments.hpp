#pragma once

#include <string>
#include <vector>

#include "treebench/mdp.hpp"

namespace treebench {

// ---------------------------------------------------------------------------
// Chain / CyclicChain

enum class ChainActionScheme { kFixedZero, kSeedHashed };

struct ChainSpec {
    int length = 10;  // N >= 2
    ChainActionScheme scheme = ChainActionScheme::kSeedHashed;
    uint64_t seed = 0;
};

// Positions 1..N. The single correct action advances the chain; s_N's correct
// action terminates with reward 1. A wrong action terminates with reward 0.
class ChainEnv : public Environment {
public:
    explicit ChainEnv(ChainSpec spec);

    StateVector reset(uint64_t seed) const override;
    StepOutcome step(const StateVector& state, int action) const override;
    int num_actions() const override { return 2; }
    int state_dim() const override { return 1; }
    std::string name() const override;

    int correct_action(int position) const;
    const ChainSpec& spec() const { return spec_; }

protected:
    int position_of(const StateVector& state) const;
    ChainSpec spec_;
};

// Same chain, but a wrong action loops back to s_1 (non-terminal) instead of
// terminating. The only terminal transition is the correct action at s_N.
class CyclicChainEnv : public ChainEnv {
public:
    explicit CyclicChainEnv(ChainSpec spec) : ChainEnv(spec) {}

    StepOutcome step(const StateVector& state, int action) const override;
    std::string name() const override;
};

// ---------------------------------------------------------------------------
// GridLake

enum class Cell : uint8_t { kStart, kFrozen, kHole, kGoal };

struct GridSpec {
    int rows = 0;
    int cols = 0;
    std::vector<Cell> cells;  // row-major
    int start_row = 0, start_col = 0;
    int goal_row = 0, goal_col = 0;
};

// Parses a map from text: one row per line, chars S/F/H/G, exactly one S and
// one G, rectangular. Throws ContractViolation on malformed input.
GridSpec parse_grid_map(const std::string& text);
GridSpec load_grid_map(const std::string& path);

// The built-in 4x4 and 8x8 layouts (same text as the shipped assets).
extern const char* const kGridLake4x4;
extern const char* const kGridLake8x8;

// Deterministic frozen lake. Actions 0..3 = left/down/right/up; moving off
// the grid leaves the state unchanged (that identity step is the loop
// source). Holes terminate with reward 0, the goal with reward 1.
class GridLakeEnv : public Environment {
public:
    explicit GridLakeEnv(GridSpec spec);

    StateVector reset(uint64_t seed) const override;
    StepOutcome step(const StateVector& state, int action) const override;
    int num_actions() const override { return 4; }
    int state_dim() const override { return 2; }
    std::string name() const override;

    const GridSpec& spec() const { return spec_; }
    Cell cell_at(int row, int col) const { return spec_.cells[static_cast<size_t>(row * spec_.cols + col)]; }

private:
    GridSpec spec_;
};

// ---------------------------------------------------------------------------
// CartPoleDet

struct CartPoleSpec {
    double gravity = 9.8;
    double mass_cart = 1.0;
    double mass_pole = 0.1;
    double half_pole_length = 0.5;
    double force_mag = 10.0;
    double tau = 0.02;                      // integration step, seconds
    double x_threshold = 2.4;               // metres
    double theta_threshold = 12.0 * M_PI / 180.0;  // radians
    double step_reward = 0.005;
    double fail_reward = -1.0;
    double reset_range = 0.05;  // reset draws each state component from +-range
};

// Classic cart-pole with one explicit-Euler step per action and no process
// noise. State is (x, x_dot, theta, theta_dot). Action 0 pushes left,
// action 1 pushes right. Surviving costs nothing and pays step_reward;
// leaving the position or angle envelope terminates with fail_reward.
class CartPoleEnv : public Environment {
public:
    explicit CartPoleEnv(CartPoleSpec spec = CartPoleSpec{});

    StateVector reset(uint64_t seed) const override;
    StepOutcome step(const StateVector& state, int action) const override;
    int num_actions() const override { return 2; }
    int state_dim() const override { return 4; }
    std::string name() const override { return "cartpole"; }
    double default_loop_threshold() const override { return 1e-3; }

    const CartPoleSpec& spec() const { return spec_; }
    bool failed(const StateVector& state) const;

private:
    CartPoleSpec spec_;
};

// ---------------------------------------------------------------------------
// Factory

// Builds an environment from a spec string:
//   chain:N[:fixed|:hashed]    cyclic:N[:fixed|:hashed]
//   gridlake:4x4               gridlake:8x8              gridlake:@<map file>
//   cartpole
// `seed` feeds the hashed correct-action scheme of the chain environments.
std::unique_ptr<Environment> make_environment(const std::string& spec, uint64_t seed);

}  // namespace treebench
