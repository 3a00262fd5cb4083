#ifndef STARREL_SEARCH_CONFIG_HPP
#define STARREL_SEARCH_CONFIG_HPP

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "starrel/matrep.hpp"

namespace starrel {

struct SearchConfig {
    Eigen::Index dim = 2;
    int restarts = 8;
    int max_iters = 2000;
    double init_scale = 1.0;
    std::uint64_t seed = 1;
    double success_tol = 1e-7;
    double penalty_weight = 1.0; // mu, for norm probing
};

struct SearchResult {
    RepTuple best;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<std::pair<int, double>> history; // (iter, residual) per accepted step
};

struct ProbeReport {
    int restarts_used = 0;
    int iterations_used = 0;
    double best_norm = 0.0; // largest verified-satisfying norm seen
    bool found = false;
};

} // namespace starrel

#endif
