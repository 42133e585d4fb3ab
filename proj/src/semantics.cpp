#include "liemin/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

namespace liemin {

TaylorPrefix taylor_coefficients(const Poly& p, const IVP& ivp, std::size_t n) {
    ivp.validate();
    if (p.dim() != ivp.dim()) throw std::invalid_argument("taylor_coefficients dimension mismatch");
    if (n == 0) throw std::invalid_argument("taylor_coefficients needs n >= 1");
    TaylorPrefix out;
    Poly cur = p;
    Rat fact(1);
    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) {
            cur = lie_derivative(cur, ivp.field);
            fact *= Rat(static_cast<long>(j));
        }
        out.coefficients.push_back(cur.evaluate(ivp.v0) / fact);
    }
    return out;
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

std::vector<double> eval_field(const std::vector<DPoly>& field, const std::vector<double>& x) {
    std::vector<double> dx(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) dx[i] = field[i].evaluate(x);
    return dx;
}

double inf_norm(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

Trajectory integrate_numeric(const std::vector<DPoly>& field, const std::vector<double>& x0,
                             const std::vector<double>& sample_times,
                             const IntegrationOptions& opts) {
    const std::size_t n = field.size();
    if (x0.size() != n) throw std::invalid_argument("integrate_numeric dimension mismatch");

    Trajectory out;
    std::vector<double> x = x0;
    double t = 0.0;
    double h = opts.initial_step;
    std::vector<double> k1 = eval_field(field, x);

    std::size_t next_sample = 0;
    auto record_until = [&](double tcur, const std::vector<double>& xcur) {
        while (next_sample < sample_times.size() && sample_times[next_sample] <= tcur + 1e-15) {
            out.times.push_back(sample_times[next_sample]);
            out.states.push_back(xcur);
            ++next_sample;
        }
    };
    if (!sample_times.empty() && sample_times.front() <= 0.0) record_until(0.0, x);

    const double t_end = sample_times.empty() ? 0.0 : sample_times.back();
    while (t < t_end) {
        if (next_sample < sample_times.size()) h = std::min(h, sample_times[next_sample] - t);
        h = std::min(h, t_end - t);
        if (h < opts.min_step) {
            out.blew_up = true;
            break;
        }

        std::vector<double> x2(n), x3(n), x4(n), x5(n), x6(n), x7(n);
        for (std::size_t i = 0; i < n; ++i) x2[i] = x[i] + h * A21 * k1[i];
        auto k2 = eval_field(field, x2);
        for (std::size_t i = 0; i < n; ++i) x3[i] = x[i] + h * (A31 * k1[i] + A32 * k2[i]);
        auto k3 = eval_field(field, x3);
        for (std::size_t i = 0; i < n; ++i)
            x4[i] = x[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        auto k4 = eval_field(field, x4);
        for (std::size_t i = 0; i < n; ++i)
            x5[i] = x[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        auto k5 = eval_field(field, x5);
        for (std::size_t i = 0; i < n; ++i)
            x6[i] = x[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] +
                                A65 * k5[i]);
        auto k6 = eval_field(field, x6);
        for (std::size_t i = 0; i < n; ++i)
            x7[i] = x[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        auto k7 = eval_field(field, x7);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                            E7 * k7[i]);
            double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(x[i]), std::abs(x7[i]));
            err = std::max(err, std::abs(e) / sc);
        }

        if (err <= 1.0) {
            t += h;
            x = std::move(x7);
            k1 = std::move(k7);  // FSAL
            record_until(t, x);
            if (inf_norm(x) > opts.blowup_norm || !std::isfinite(inf_norm(x))) {
                out.blew_up = true;
                break;
            }
        }
        double factor = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    out.reached = t;
    return out;
}

Trajectory integrate_numeric(const IVP& ivp, double t_end, std::size_t samples,
                             const IntegrationOptions& opts) {
    ivp.validate();
    if (t_end <= 0) throw std::invalid_argument("t_end must be positive");
    if (samples < 2) samples = 2;
    std::vector<DPoly> field;
    for (const auto& f : ivp.field.drifts) field.push_back(to_double_poly(f));
    std::vector<double> x0;
    for (const auto& v : ivp.v0) x0.push_back(rat_to_double(v));
    std::vector<double> ts;
    for (std::size_t i = 0; i < samples; ++i)
        ts.push_back(t_end * static_cast<double>(i) / static_cast<double>(samples - 1));
    return integrate_numeric(field, x0, ts, opts);
}

std::size_t WeightedAutomaton::state_index(const Monomial& m) const {
    auto it = std::find(states.begin(), states.end(), m);
    if (it == states.end()) throw std::invalid_argument("state not present in automaton");
    return static_cast<std::size_t>(it - states.begin());
}

WeightedAutomaton export_weighted_automaton(const IVP& ivp, std::size_t depth) {
    ivp.validate();
    WeightedAutomaton wa;
    wa.var_names = ivp.var_names;

    std::map<Monomial, std::size_t, GrevlexLess> index;
    auto intern = [&](const Monomial& m) {
        auto [it, added] = index.emplace(m, wa.states.size());
        if (added) {
            wa.states.push_back(m);
            wa.weights.push_back(Poly::term(ivp.dim(), m, Rat(1)).evaluate(ivp.v0));
            wa.frontier.push_back(true);
        }
        return it->second;
    };

    std::deque<std::pair<std::size_t, std::size_t>> queue;  // (state, depth used)
    for (std::size_t i = 0; i < ivp.dim(); ++i)
        queue.emplace_back(intern(Monomial::var(ivp.dim(), i)), 0);

    while (!queue.empty()) {
        auto [s, d] = queue.front();
        queue.pop_front();
        if (!wa.frontier[s] || d >= depth) continue;
        wa.frontier[s] = false;
        Poly der = lie_derivative(Poly::term(ivp.dim(), wa.states[s], Rat(1)), ivp.field);
        for (const auto& [m, c] : der.terms()) {
            std::size_t to = intern(m);
            wa.transitions.push_back({s, c, to});
            queue.emplace_back(to, d + 1);
        }
    }
    // States with no outgoing derivative terms are fully explored.
    for (std::size_t s = 0; s < wa.states.size(); ++s) {
        if (!wa.frontier[s]) continue;
        Poly der = lie_derivative(Poly::term(ivp.dim(), wa.states[s], Rat(1)), ivp.field);
        if (der.is_zero()) wa.frontier[s] = false;
    }
    return wa;
}

std::vector<Rat> stream_semantics(const WeightedAutomaton& wa, std::size_t state, std::size_t n) {
    if (state >= wa.states.size()) throw std::invalid_argument("stream state out of range");
    // sigma(i) over all states by backward DP on run length.
    std::vector<Rat> cur = wa.weights;  // sigma(0)
    std::vector<Rat> result;
    std::vector<bool> reach(wa.states.size(), false);
    reach[state] = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t s = 0; s < wa.states.size(); ++s)
            if (reach[s] && wa.frontier[s] && i > 0) throw StreamTruncated();
        result.push_back(cur[state]);
        if (i + 1 == n) break;
        // Next by one more transition: sigma'(s) = sum_{s ->c t} c * sigma(t).
        std::vector<Rat> next(wa.states.size(), Rat(0));
        for (const auto& tr : wa.transitions) next[tr.from] += tr.label * cur[tr.to];
        // Frontier reachability bookkeeping for truncation detection.
        std::vector<bool> nreach = reach;
        for (const auto& tr : wa.transitions)
            if (reach[tr.from]) nreach[tr.to] = true;
        reach = std::move(nreach);
        cur = std::move(next);
    }
    return result;
}

}  // namespace liemin
