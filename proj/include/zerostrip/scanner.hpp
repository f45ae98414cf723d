#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zerostrip/gridscan.hpp"
#include "zerostrip/series.hpp"

namespace zerostrip {

struct ScanConfig {
    double sigma_lo = 2.0, sigma_hi = 3.0, dsigma = 0.01;
    double t_lo = 0.0, t_hi = 100.0, dt = 0.01;
    double eps = 1e-6;           // evaluation accuracy per point
    double threshold = 0.0;      // strip detection level; 0 = auto (10x max tail bound)
    int workers = 0;             // 0 = hardware default
    std::size_t fixed_terms = 0; // paper-compatible truncation override

    void validate() const;
};

struct ScanRow {
    double sigma = 0.0;
    double min_modulus = 0.0;
    double argmin_t = 0.0;
    double tail_bound = 0.0;
    bool warning = false;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    ScanConfig config;
    bool any_warning = false;

    double max_tail_bound() const;
};

// Per-sigma minimum of |L(sigma+it)| over the t-grid. Rows are partitioned
// across workers; the result is bitwise identical for any worker count.
ScanResult min_modulus_scan(const Series& s, const ScanConfig& cfg);

struct StripInterval {
    double sigma_lo = 0.0;
    double sigma_hi = 0.0;
    double attained_min = 0.0;  // smallest row minimum inside the strip
};

// Maximal runs of consecutive rows with min_modulus >= threshold; runs
// shorter than 3 * dsigma are dropped.
std::vector<StripInterval> detect_zero_free_strips(const ScanResult& result, double threshold);

struct Rectangle {
    double sigma_lo = 0.0, sigma_hi = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
};

struct ZeroCountResult {
    int count = 0;
    double raw_integral = 0.0;  // before rounding
    double residual = 0.0;      // |raw - count|
};

// Argument-principle count: (1/2 pi i) contour integral of L'/L over the
// rectangle boundary, adaptive trapezoid with recursive edge bisection.
ZeroCountResult count_zeros_rectangle(const Series& s, const Rectangle& box, double eps = 1e-6,
                                      int initial_samples_per_edge = 64);

struct RefineOptions {
    double eps_newton = 1e-8;
    double eps_certify = 1e-10;
    int max_steps = 50;
    double step_tol = 1e-11;
    double value_tol = 1e-10;
};

// Newton refinement of a zero from a seed. Throws DivergedError when the
// iteration leaves sigma > 1.01, exceeds max_steps, or stalls.
cplx refine_zero(const Series& s, cplx seed, const RefineOptions& opts = {});

struct ConfirmedZero {
    cplx location;
    double row_sigma = 0.0;
    double final_modulus = 0.0;
};

struct SigmaStarReport {
    double sigma_low = 0.0;   // largest grid sigma whose row refined to a zero
    double sigma_high = 0.0;  // first sigma with a clean window above it
    bool empirical = true;    // always: scan-supported, not rigorous
    std::vector<ConfirmedZero> zeros;
    std::vector<double> tail_artifact_rows;  // rows indistinguishable from noise
    std::vector<double> unresolved_rows;     // candidate rows Newton could not settle
};

// Empirical bracket for sigma*(L): refine every row with min <= zero_tol,
// classify the rest, and find the first sigma with a unit window of rows
// all above 10 * zero_tol. Throws NoZerosFoundError if nothing confirms.
SigmaStarReport estimate_sigma_star(const Series& s, const ScanConfig& cfg, double zero_tol);

}  // namespace zerostrip
