#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <stdexcept>
#include <string>

namespace treebench {

// Contract violations: bad arguments, stepping from terminal states, etc.
struct ContractViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Resource refusals (e.g. the enumerator's node-count safety limit).
struct LimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fixed-length real-valued observation. Inline storage keeps tree nodes and
// rollouts allocation-free; every shipped environment fits in kMaxDim.
class StateVector {
public:
    static constexpr int kMaxDim = 8;

    StateVector() : n_(0) {}
    StateVector(std::initializer_list<double> vals) : n_(0) {
        if (vals.size() > kMaxDim) throw ContractViolation("StateVector: dimension exceeds kMaxDim");
        for (double v : vals) v_[n_++] = v;
    }
    static StateVector zeros(int dim) {
        if (dim < 0 || dim > kMaxDim) throw ContractViolation("StateVector: bad dimension");
        StateVector s;
        s.n_ = dim;
        s.v_.fill(0.0);
        return s;
    }

    int size() const { return n_; }
    double operator[](int i) const { return v_[static_cast<size_t>(i)]; }
    double& operator[](int i) { return v_[static_cast<size_t>(i)]; }

    bool operator==(const StateVector& o) const {
        if (n_ != o.n_) return false;
        for (int i = 0; i < n_; ++i)
            if (v_[static_cast<size_t>(i)] != o.v_[static_cast<size_t>(i)]) return false;
        return true;
    }
    bool operator!=(const StateVector& o) const { return !(*this == o); }

    bool all_finite() const {
        for (int i = 0; i < n_; ++i)
            if (!std::isfinite(v_[static_cast<size_t>(i)])) return false;
        return true;
    }

private:
    std::array<double, kMaxDim> v_{};
    int n_;
};

inline double l2_distance(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw ContractViolation("l2_distance: dimension mismatch");
    double acc = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

struct StepOutcome {
    StateVector next_state;  // valid even on terminal transitions (logging only)
    double reward = 0.0;
    bool terminal = false;
};

// Deterministic MDP. Instances are immutable after construction; step is a
// pure function of (state, action), so one instance may be shared freely
// across threads and search trees.
class Environment {
public:
    virtual ~Environment() = default;

    virtual StateVector reset(uint64_t seed) const = 0;
    virtual StepOutcome step(const StateVector& state, int action) const = 0;
    virtual int num_actions() const = 0;
    virtual int state_dim() const = 0;
    virtual std::string name() const = 0;

    // Loop-detection radius that makes sense for this state space.
    virtual double default_loop_threshold() const { return 1e-6; }

protected:
    void check_action(int action) const {
        if (action < 0 || action >= num_actions()) throw ContractViolation(name() + ": action out of range");
    }
    void check_state_dim(const StateVector& s) const {
        if (s.size() != state_dim()) throw ContractViolation(name() + ": state dimension mismatch");
    }
};

}  // namespace treebench
