#pragma once

#include <functional>
#include <vector>

#include "zerostrip/series.hpp"

namespace zerostrip {

// One horizontal sweep s = sigma + i(t0 + k dt), k = 0..count-1.
struct GridRequest {
    double sigma = 2.0;
    double t0 = 0.0;
    double dt = 0.01;
    std::size_t count = 1;
    double eps = 1e-8;
    std::size_t fixed_terms = 0;  // nonzero: paper-compatible fixed truncation
    std::size_t n_max = kDefaultTermCap;
};

struct GridMeta {
    std::size_t terms = 1;
    double tail_bound = 0.0;
    bool warning = false;
};

// Incremental-rotor sweep: z_n <- z_n * e^{-i dt log n}, with a fresh restart
// (full re-synthesis of all phases) every 1024 steps so the accumulated rotor
// drift stays below 1e-11 per point. Restart boundaries are fixed relative to
// the request, making the output independent of any external partitioning.
GridMeta grid_foreach(const Series& s, const GridRequest& req,
                      const std::function<void(std::size_t, cplx)>& sink);

std::vector<cplx> evaluate_grid(const Series& s, const GridRequest& req, GridMeta* meta = nullptr);

// Number of grid points for an inclusive range with step.
std::size_t grid_count(double lo, double hi, double step);

}  // namespace zerostrip
