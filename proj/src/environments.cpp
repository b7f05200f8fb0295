#include "treebench/environments.hpp"

#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

#include "treebench/rng.hpp"

namespace treebench {

// ---------------------------------------------------------------------------
// ChainEnv

ChainEnv::ChainEnv(ChainSpec spec) : spec_(spec) {
    if (spec_.length < 2) throw ContractViolation("chain: length must be >= 2");
}

std::string ChainEnv::name() const {
    return "chain:" + std::to_string(spec_.length);
}

StateVector ChainEnv::reset(uint64_t /*seed*/) const {
    return StateVector{1.0};
}

int ChainEnv::correct_action(int position) const {
    if (position < 1 || position > spec_.length) throw ContractViolation(name() + ": position out of range");
    if (spec_.scheme == ChainActionScheme::kFixedZero) return 0;
    return static_cast<int>(mix64(spec_.seed ^ (static_cast<uint64_t>(position) * 0x9e3779b97f4a7c15ULL)) & 1u);
}

int ChainEnv::position_of(const StateVector& state) const {
    check_state_dim(state);
    const double p = state[0];
    const int pos = static_cast<int>(p);
    if (p != std::floor(p) || pos < 1 || pos > spec_.length)
        throw ContractViolation(name() + ": state is not a valid chain position");
    return pos;
}

StepOutcome ChainEnv::step(const StateVector& state, int action) const {
    check_action(action);
    const int pos = position_of(state);
    if (action != correct_action(pos)) {
        return {state, 0.0, true};
    }
    if (pos == spec_.length) {
        return {state, 1.0, true};
    }
    return {StateVector{static_cast<double>(pos + 1)}, 0.0, false};
}

// ---------------------------------------------------------------------------
// CyclicChainEnv

std::string CyclicChainEnv::name() const {
    return "cyclic:" + std::to_string(spec_.length);
}

StepOutcome CyclicChainEnv::step(const StateVector& state, int action) const {
    check_action(action);
    const int pos = position_of(state);
    if (action != correct_action(pos)) {
        return {StateVector{1.0}, 0.0, false};
    }
    if (pos == spec_.length) {
        return {state, 1.0, true};
    }
    return {StateVector{static_cast<double>(pos + 1)}, 0.0, false};
}

// ---------------------------------------------------------------------------
// GridLake

const char* const kGridLake4x4 =
    "SFFF\n"
    "FHFH\n"
    "FFFH\n"
    "HFFG\n";

const char* const kGridLake8x8 =
    "SFFFFFFF\n"
    "FFFFFFFF\n"
    "FFFHFFFF\n"
    "FFFFFHFF\n"
    "FFFHFFFF\n"
    "FHHFFFHF\n"
    "FHFFHFHF\n"
    "FFFHFFFG\n";

GridSpec parse_grid_map(const std::string& text) {
    GridSpec g;
    std::istringstream in(text);
    std::string line;
    int starts = 0, goals = 0;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (g.cols == 0) {
            g.cols = static_cast<int>(line.size());
        } else if (static_cast<int>(line.size()) != g.cols) {
            throw ContractViolation("grid map: rows have unequal length");
        }
        for (int c = 0; c < g.cols; ++c) {
            Cell cell;
            switch (line[static_cast<size_t>(c)]) {
                case 'S': cell = Cell::kStart; g.start_row = g.rows; g.start_col = c; ++starts; break;
                case 'F': cell = Cell::kFrozen; break;
                case 'H': cell = Cell::kHole; break;
                case 'G': cell = Cell::kGoal; g.goal_row = g.rows; g.goal_col = c; ++goals; break;
                default: throw ContractViolation("grid map: unknown cell character");
            }
            g.cells.push_back(cell);
        }
        ++g.rows;
    }
    if (g.rows == 0) throw ContractViolation("grid map: empty");
    if (starts != 1) throw ContractViolation("grid map: need exactly one S");
    if (goals != 1) throw ContractViolation("grid map: need exactly one G");
    return g;
}

GridSpec load_grid_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractViolation("grid map: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_grid_map(buf.str());
}

GridLakeEnv::GridLakeEnv(GridSpec spec) : spec_(std::move(spec)) {
    // goal must be reachable from start over frozen cells
    std::vector<char> seen(spec_.cells.size(), 0);
    std::queue<int> q;
    q.push(spec_.start_row * spec_.cols + spec_.start_col);
    seen[static_cast<size_t>(q.front())] = 1;
    bool reached = false;
    while (!q.empty()) {
        const int idx = q.front();
        q.pop();
        const int r = idx / spec_.cols, c = idx % spec_.cols;
        if (r == spec_.goal_row && c == spec_.goal_col) {
            reached = true;
            break;
        }
        if (spec_.cells[static_cast<size_t>(idx)] == Cell::kHole) continue;
        const int dr[4] = {0, 1, 0, -1};
        const int dc[4] = {-1, 0, 1, 0};
        for (int k = 0; k < 4; ++k) {
            const int nr = r + dr[k], nc = c + dc[k];
            if (nr < 0 || nr >= spec_.rows || nc < 0 || nc >= spec_.cols) continue;
            const int nidx = nr * spec_.cols + nc;
            if (!seen[static_cast<size_t>(nidx)]) {
                seen[static_cast<size_t>(nidx)] = 1;
                q.push(nidx);
            }
        }
    }
    if (!reached) throw ContractViolation("grid map: goal not reachable from start");
}

std::string GridLakeEnv::name() const {
    return "gridlake:" + std::to_string(spec_.rows) + "x" + std::to_string(spec_.cols);
}

StateVector GridLakeEnv::reset(uint64_t /*seed*/) const {
    return StateVector{static_cast<double>(spec_.start_row), static_cast<double>(spec_.start_col)};
}

StepOutcome GridLakeEnv::step(const StateVector& state, int action) const {
    check_action(action);
    check_state_dim(state);
    const int r = static_cast<int>(state[0]);
    const int c = static_cast<int>(state[1]);
    if (state[0] != std::floor(state[0]) || state[1] != std::floor(state[1]) ||
        r < 0 || r >= spec_.rows || c < 0 || c >= spec_.cols)
        throw ContractViolation(name() + ": state is not a valid cell");
    const Cell here = cell_at(r, c);
    if (here == Cell::kHole || here == Cell::kGoal)
        throw ContractViolation(name() + ": stepping from a terminal cell");

    int nr = r, nc = c;
    switch (action) {
        case 0: nc = c - 1; break;  // left
        case 1: nr = r + 1; break;  // down
        case 2: nc = c + 1; break;  // right
        case 3: nr = r - 1; break;  // up
    }
    if (nr < 0 || nr >= spec_.rows || nc < 0 || nc >= spec_.cols) {
        nr = r;
        nc = c;
    }
    const StateVector next{static_cast<double>(nr), static_cast<double>(nc)};
    switch (cell_at(nr, nc)) {
        case Cell::kHole: return {next, 0.0, true};
        case Cell::kGoal: return {next, 1.0, true};
        default: return {next, 0.0, false};
    }
}

// ---------------------------------------------------------------------------
// CartPoleEnv

CartPoleEnv::CartPoleEnv(CartPoleSpec spec) : spec_(spec) {
    if (spec_.tau <= 0 || spec_.mass_cart <= 0 || spec_.mass_pole <= 0)
        throw ContractViolation("cartpole: bad physics constants");
}

StateVector CartPoleEnv::reset(uint64_t seed) const {
    StateVector s = StateVector::zeros(4);
    uint64_t h = mix64(seed);
    for (int i = 0; i < 4; ++i) {
        h = mix64(h);
        const double u = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0,1)
        s[i] = (2.0 * u - 1.0) * spec_.reset_range;
    }
    return s;
}

bool CartPoleEnv::failed(const StateVector& state) const {
    return std::abs(state[0]) > spec_.x_threshold || std::abs(state[2]) > spec_.theta_threshold;
}

StepOutcome CartPoleEnv::step(const StateVector& state, int action) const {
    check_action(action);
    check_state_dim(state);
    if (!state.all_finite()) throw ContractViolation("cartpole: non-finite state");
    if (failed(state)) throw ContractViolation("cartpole: stepping from a failed state");

    const double force = (action == 1) ? spec_.force_mag : -spec_.force_mag;
    const double x = state[0], x_dot = state[1], theta = state[2], theta_dot = state[3];
    const double cos_t = std::cos(theta), sin_t = std::sin(theta);
    const double total_mass = spec_.mass_cart + spec_.mass_pole;
    const double polemass_length = spec_.mass_pole * spec_.half_pole_length;

    const double temp = (force + polemass_length * theta_dot * theta_dot * sin_t) / total_mass;
    const double theta_acc = (spec_.gravity * sin_t - cos_t * temp) /
                             (spec_.half_pole_length * (4.0 / 3.0 - spec_.mass_pole * cos_t * cos_t / total_mass));
    const double x_acc = temp - polemass_length * theta_acc * cos_t / total_mass;

    StateVector next = StateVector::zeros(4);
    next[0] = x + spec_.tau * x_dot;
    next[1] = x_dot + spec_.tau * x_acc;
    next[2] = theta + spec_.tau * theta_dot;
    next[3] = theta_dot + spec_.tau * theta_acc;

    if (failed(next)) return {next, spec_.fail_reward, true};
    return {next, spec_.step_reward, false};
}

// ---------------------------------------------------------------------------
// Factory

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

ChainSpec chain_spec_from(const std::vector<std::string>& parts, uint64_t seed) {
    if (parts.size() < 2 || parts.size() > 3)
        throw ContractViolation("env spec: expected chain:N or chain:N:fixed|hashed");
    ChainSpec cs;
    try {
        cs.length = std::stoi(parts[1]);
    } catch (const std::exception&) {
        throw ContractViolation("env spec: bad chain length '" + parts[1] + "'");
    }
    cs.seed = seed;
    if (parts.size() == 3) {
        if (parts[2] == "fixed") cs.scheme = ChainActionScheme::kFixedZero;
        else if (parts[2] == "hashed") cs.scheme = ChainActionScheme::kSeedHashed;
        else throw ContractViolation("env spec: unknown chain scheme '" + parts[2] + "'");
    }
    return cs;
}

}  // namespace

std::unique_ptr<Environment> make_environment(const std::string& spec, uint64_t seed) {
    const auto parts = split(spec, ':');
    const std::string& kind = parts[0];
    if (kind == "chain") {
        return std::make_unique<ChainEnv>(chain_spec_from(parts, seed));
    }
    if (kind == "cyclic") {
        return std::make_unique<CyclicChainEnv>(chain_spec_from(parts, seed));
    }
    if (kind == "gridlake") {
        if (parts.size() != 2) throw ContractViolation("env spec: expected gridlake:4x4|8x8|@file");
        if (parts[1] == "4x4") return std::make_unique<GridLakeEnv>(parse_grid_map(kGridLake4x4));
        if (parts[1] == "8x8") return std::make_unique<GridLakeEnv>(parse_grid_map(kGridLake8x8));
        if (!parts[1].empty() && parts[1][0] == '@')
            return std::make_unique<GridLakeEnv>(load_grid_map(parts[1].substr(1)));
        throw ContractViolation("env spec: unknown gridlake layout '" + parts[1] + "'");
    }
    if (kind == "cartpole") {
        if (parts.size() != 1) throw ContractViolation("env spec: cartpole takes no parameters");
        return std::make_unique<CartPoleEnv>();
    }
    throw ContractViolation("env spec: unknown environment '" + kind + "'");
}

}  // namespace treebench
