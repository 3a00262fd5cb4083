#include "starrel/search.hpp"

#include <algorithm>
#include <cmath>

#include "starrel/rng.hpp"

namespace starrel {

namespace {

using Params = std::vector<double>;

RepTuple unpack(const Params& p, const std::vector<GeneratorId>& gens, Eigen::Index n) {
    RepTuple rho(n);
    size_t idx = 0;
    for (const auto& g : gens) {
        CMatrix m(n, n);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c) {
                m(r, c) = Complex(p[idx], p[idx + 1]);
                idx += 2;
            }
        rho.assignment[g] = std::move(m);
    }
    return rho;
}

Params random_params(Rng& rng, size_t count, double scale) {
    Params p(count);
    for (auto& v : p) v = scale * rng.normal();
    return p;
}

struct DescentResult {
    Params params;
    double value = 0.0;
    int iterations = 0;
    std::vector<std::pair<int, double>> history;
};

// Backtracking gradient descent with forward-difference gradients and an
// adaptive initial step. Stops when the objective dips below `stop_below`
// or progress stalls.
template <typename F>
DescentResult descend(F&& objective, Params x, int max_iters, double stop_below,
                      std::vector<std::pair<int, double>>* trace = nullptr) {
    DescentResult out;
    double fx = objective(x);
    double step = 0.1;
    int stall = 0;
    if (trace) trace->emplace_back(0, fx);
    for (int it = 1; it <= max_iters; ++it) {
        out.iterations = it;
        if (fx <= stop_below) break;

        Params grad(x.size());
        double gnorm2 = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
            const double h = 1e-6 * (1.0 + std::abs(x[i]));
            Params xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            grad[i] = (objective(xp) - objective(xm)) / (2.0 * h);
            gnorm2 += grad[i] * grad[i];
        }
        if (gnorm2 <= 1e-30) break;

        bool accepted = false;
        double t = step;
        for (int bt = 0; bt < 60; ++bt) {
            Params xn = x;
            for (size_t i = 0; i < x.size(); ++i) xn[i] -= t * grad[i];
            const double fn = objective(xn);
            if (fn < fx - 1e-4 * t * gnorm2) {
                x = std::move(xn);
                fx = fn;
                step = std::min(t * 2.0, 1e6);
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (trace) trace->emplace_back(it, fx);
        if (!accepted) {
            if (++stall >= 3) break;
            step = std::max(step * 1e-2, 1e-14);
        } else {
            stall = 0;
        }
    }
    out.params = std::move(x);
    out.value = fx;
    return out;
}

} // namespace

SearchResult find_representation(const RelationSet& R, const SearchConfig& cfg) {
    if (cfg.dim < 1) throw Error(Errc::BadDimension, "search dimension must be >= 1");
    const size_t nparams = R.generators.size() * 2 * cfg.dim * cfg.dim;
    SearchResult best;
    best.residual = std::numeric_limits<double>::infinity();

    // The squared aggregate is smooth near zero; sqrt only for reporting.
    auto objective = [&](const Params& p) {
        const double r = residual(R, unpack(p, R.generators, cfg.dim));
        return r * r;
    };

    for (int r = 0; r < cfg.restarts; ++r) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(r));
        Params x0 = random_params(rng, nparams, cfg.init_scale);
        std::vector<std::pair<int, double>> trace;
        DescentResult dr = descend(objective, std::move(x0), cfg.max_iters,
                                   cfg.success_tol * cfg.success_tol, &trace);
        const double res = std::sqrt(std::max(dr.value, 0.0));
        if (res < best.residual) {
            best.residual = res;
            best.best = unpack(dr.params, R.generators, cfg.dim);
            best.iterations = dr.iterations;
            for (auto& [it, v] : trace) v = std::sqrt(std::max(v, 0.0));
            best.history = std::move(trace);
        }
        if (best.residual <= cfg.success_tol) break;
    }
    best.converged = best.residual <= cfg.success_tol;
    return best;
}

std::optional<RepTuple> probe_norm_bound(const RelationSet& R, const GeneratorId& g,
                                         double target, const SearchConfig& cfg,
                                         ProbeReport* report) {
    if (!(target > 0.0)) throw Error(Errc::InvalidArgument, "probe target must be positive");
    if (cfg.dim < 1) throw Error(Errc::BadDimension, "search dimension must be >= 1");
    bool declared = false;
    for (const auto& gen : R.generators) declared |= (gen == g);
    if (!declared) throw Error(Errc::UndeclaredGenerator, g.token());

    const size_t nparams = R.generators.size() * 2 * cfg.dim * cfg.dim;
    const double mu = cfg.penalty_weight > 0.0 ? cfg.penalty_weight : 1.0;
    const double sqrt_n = std::sqrt(static_cast<double>(cfg.dim));
    const double tol2 = cfg.success_tol * cfg.success_tol;

    auto as_tuple = [&](const Params& p) { return unpack(p, R.generators, cfg.dim); };
    auto feasibility = [&](const Params& p) {
        const double r = residual(R, as_tuple(p));
        return r * r;
    };

    ProbeReport local;
    std::optional<RepTuple> found;
    const int phase_iters = std::max(cfg.max_iters / 8, 150);

    for (int r = 0; r < cfg.restarts && !found; ++r) {
        local.restarts_used = r + 1;
        Rng rng(cfg.seed, 0x70ULL + static_cast<std::uint64_t>(r));
        Params x = random_params(rng, nparams, cfg.init_scale);

        // Settle on the zero set first.
        DescentResult settle = descend(feasibility, std::move(x), cfg.max_iters, 0.01 * tol2);
        local.iterations_used += settle.iterations;
        x = std::move(settle.params);

        // Continuation ladder: raise the capped norm bonus target, then
        // re-polish feasibility while a hinge keeps the gained norm.
        for (int round = 0; round < 64; ++round) {
            RepTuple rho = as_tuple(x);
            const double norm = op_norm(rho.at(g));
            if (norm >= target && check(R, rho, cfg.success_tol).satisfied) {
                local.best_norm = std::max(local.best_norm, norm);
                local.found = true;
                found = std::move(rho);
                break;
            }
            if (check(R, rho, cfg.success_tol).satisfied)
                local.best_norm = std::max(local.best_norm, norm);

            const double aim = std::min(std::max(2.0 * norm, 1.0), 1.05 * target);
            // The feasibility Hessian grows like norm^2; scale the bonus to
            // keep the climb rate roughly constant along the ladder.
            const double mu_round = mu * std::max(1.0, norm * norm);
            auto march = [&](const Params& p) {
                RepTuple t = as_tuple(p);
                const double res = residual(R, t);
                return res * res - mu_round * std::min(t.at(g).norm() / sqrt_n, aim);
            };
            DescentResult m = descend(march, std::move(x), phase_iters,
                                      -mu_round * aim + 0.01 * tol2);
            local.iterations_used += m.iterations;

            const double reached = op_norm(as_tuple(m.params).at(g));
            const double hold_at = std::min(0.95 * reached, 1.02 * target);
            auto polish = [&](const Params& p) {
                RepTuple t = as_tuple(p);
                const double res = residual(R, t);
                const double deficit = std::max(0.0, hold_at - op_norm(t.at(g)));
                return res * res + mu_round * deficit * deficit;
            };
            DescentResult pol = descend(polish, std::move(m.params), phase_iters, 0.01 * tol2);
            local.iterations_used += pol.iterations;
            x = std::move(pol.params);

            const double after = op_norm(as_tuple(x).at(g));
            if (after < norm * 1.01 + 1e-9 && after < target) break; // stalled ladder
        }
    }
    if (report) *report = local;
    return found;
}

RepTuple witness_idempotent(double t) {
    RepTuple rho(2);
    CMatrix x(2, 2);
    x << Complex(1, 0), Complex(t, 0), Complex(0, 0), Complex(0, 0);
    rho.assignment[GeneratorId("x")] = x;
    return rho;
}

RepTuple witness_projection_rank1() {
    RepTuple rho(2);
    CMatrix x = cmatrix_zero(2);
    x(0, 0) = Complex(1, 0);
    rho.assignment[GeneratorId("x")] = x;
    return rho;
}

RepTuple witness_half_block() {
    RepTuple rho(1);
    CMatrix half(1, 1);
    half(0, 0) = Complex(0.5, 0.0);
    rho.assignment[GeneratorId("h")] = half;
    rho.assignment[GeneratorId("k")] = half;
    rho.assignment[GeneratorId("x")] = half;
    return rho;
}

RepTuple seeded_witness(const std::string& name) {
    if (name == "projection_rank1") return witness_projection_rank1();
    if (name == "half_block_P") return witness_half_block();
    if (name.rfind("idempotent(", 0) == 0 && name.back() == ')') {
        const std::string arg = name.substr(11, name.size() - 12);
        try {
            size_t used = 0;
            double t = std::stod(arg, &used);
            if (used == arg.size()) return witness_idempotent(t);
        } catch (const std::exception&) {
        }
        throw Error(Errc::UnknownName, "bad idempotent parameter: " + arg);
    }
    throw Error(Errc::UnknownName, name);
}

} // namespace starrel
