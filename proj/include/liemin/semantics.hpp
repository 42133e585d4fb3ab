#pragma once

#include <string>
#include <vector>

#include "liemin/ivp.hpp"
#include "liemin/lie.hpp"

namespace liemin {

// Exact Taylor coefficients of p(x(t)) at 0: a_j = L^(j)(p)(v0) / j!.
struct TaylorPrefix {
    std::vector<Rat> coefficients;
};

TaylorPrefix taylor_coefficients(const Poly& p, const IVP& ivp, std::size_t n);

struct IntegrationOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double initial_step = 1e-3;
    double min_step = 1e-14;
    double blowup_norm = 1e12;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    bool blew_up = false;
    double reached = 0.0;  // last time actually attained
};

// Adaptive Dormand-Prince RK45; samples at the requested times (ascending).
Trajectory integrate_numeric(const std::vector<DPoly>& field, const std::vector<double>& x0,
                             const std::vector<double>& sample_times,
                             const IntegrationOptions& opts = {});

Trajectory integrate_numeric(const IVP& ivp, double t_end, std::size_t samples = 101,
                             const IntegrationOptions& opts = {});

// Monomial-as-state view of Lie derivation: alpha -> beta with weight c iff
// L(alpha) has coefficient c on beta; state weight is alpha(v0). Nonlinear
// systems unfold to infinite automata, so exploration is depth-bounded and
// unexpanded states are flagged as frontier.
struct WeightedAutomaton {
    std::vector<Monomial> states;
    std::vector<Rat> weights;
    std::vector<bool> frontier;  // true: outgoing transitions not explored
    struct Transition {
        std::size_t from;
        Rat label;
        std::size_t to;
    };
    std::vector<Transition> transitions;
    std::vector<std::string> var_names;

    std::size_t state_index(const Monomial& m) const;
};

WeightedAutomaton export_weighted_automaton(const IVP& ivp, std::size_t depth);

struct StreamTruncated : std::runtime_error {
    StreamTruncated()
        : std::runtime_error("stream request reaches an unexplored frontier state") {}
};

// sigma_state(i) for i < n: total weight of i-step runs from the state.
std::vector<Rat> stream_semantics(const WeightedAutomaton& wa, std::size_t state, std::size_t n);

}  // namespace liemin
