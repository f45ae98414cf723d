#include "zerostrip/scanner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "zerostrip/errors.hpp"

namespace zerostrip {

namespace {

int effective_workers(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 2;
}

// Index-sharded parallel loop. Each index is processed by exactly one thread
// and writes only its own slot, so results cannot depend on the worker count.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)),
                                           std::max<std::size_t>(count, 1));
    if (nw <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < nw; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// Progress ticker for long scans; stderr only, >= 1 s between lines.
class Progress {
public:
    explicit Progress(std::string label, std::size_t total)
        : label_(std::move(label)), total_(total), start_(clock::now()) {}
    void tick() {
        std::size_t d = ++done_;
        auto now = clock::now();
        std::lock_guard<std::mutex> lock(mutex_);
        if (now - last_ < std::chrono::seconds(1) && d != total_) return;
        last_ = now;
        double secs = std::chrono::duration<double>(now - start_).count();
        std::cerr << label_ << ": " << d << "/" << total_ << " rows (" << secs << " s)\n";
    }

private:
    using clock = std::chrono::steady_clock;
    std::string label_;
    std::size_t total_;
    std::atomic<std::size_t> done_{0};
    clock::time_point start_, last_{};
    std::mutex mutex_;
};

}  // namespace

void ScanConfig::validate() const {
    if (!(sigma_lo >= 1.01)) throw ValidationError("scan: sigma_lo >= 1.01 required");
    if (!(dsigma > 0.0) || !(dt > 0.0)) throw ValidationError("scan: steps must be positive");
    if (sigma_hi < sigma_lo) throw ValidationError("scan: sigma_hi >= sigma_lo required");
    if (t_hi < t_lo) throw ValidationError("scan: t_hi >= t_lo required");
    if (!(eps > 0.0)) throw ValidationError("scan: eps > 0 required");
}

double ScanResult::max_tail_bound() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.tail_bound);
    return m;
}

ScanResult min_modulus_scan(const Series& s, const ScanConfig& cfg) {
    cfg.validate();
    const std::size_t n_sigma = grid_count(cfg.sigma_lo, cfg.sigma_hi, cfg.dsigma);
    const std::size_t n_t = grid_count(cfg.t_lo, cfg.t_hi, cfg.dt);

    // warm shared caches before sharing across workers
    {
        Truncation t0 = truncation_length(s, cfg.sigma_lo, cfg.eps);
        std::size_t warm_n = cfg.fixed_terms ? cfg.fixed_terms : t0.terms;
        s.warm(warm_n);
    }

    ScanResult result;
    result.config = cfg;
    result.rows.resize(n_sigma);
    Progress progress("scan", n_sigma);

    parallel_for(n_sigma, effective_workers(cfg.workers), [&](std::size_t i) {
        double sigma = cfg.sigma_lo + cfg.dsigma * static_cast<double>(i);
        GridRequest req;
        req.sigma = sigma;
        req.t0 = cfg.t_lo;
        req.dt = cfg.dt;
        req.count = n_t;
        req.eps = cfg.eps;
        req.fixed_terms = cfg.fixed_terms;

        double best = std::numeric_limits<double>::infinity();
        double best_t = cfg.t_lo;
        GridMeta meta = grid_foreach(s, req, [&](std::size_t j, cplx v) {
            double m = std::abs(v);
            if (m < best) {
                best = m;
                best_t = cfg.t_lo + cfg.dt * static_cast<double>(j);
            }
        });
        result.rows[i] = {sigma, best, best_t, meta.tail_bound, meta.warning};
        progress.tick();
    });

    for (const auto& r : result.rows) result.any_warning = result.any_warning || r.warning;
    return result;
}

std::vector<StripInterval> detect_zero_free_strips(const ScanResult& result, double threshold) {
    std::vector<StripInterval> strips;
    const auto& rows = result.rows;
    const double min_len = 3.0 * result.config.dsigma;
    std::size_t i = 0;
    while (i < rows.size()) {
        if (rows[i].min_modulus < threshold) {
            ++i;
            continue;
        }
        std::size_t j = i;
        double attained = rows[i].min_modulus;
        while (j + 1 < rows.size() && rows[j + 1].min_modulus >= threshold) {
            ++j;
            attained = std::min(attained, rows[j].min_modulus);
        }
        double lo = rows[i].sigma, hi = rows[j].sigma;
        if (hi - lo >= min_len) strips.push_back({lo, hi, attained});
        i = j + 1;
    }
    return strips;
}

// ---------------------------------------------------------------------------
// Argument principle
// ---------------------------------------------------------------------------

namespace {

cplx log_derivative(const Series& s, cplx z, double eps) {
    EvalResult v = evaluate(s, z, eps);
    EvalResult d = evaluate_derivative(s, z, eps);
    return d.value / v.value;
}

struct EdgeIntegrator {
    const Series& s;
    double eps;
    int max_depth;

    cplx integrate(cplx a, cplx b, cplx fa, cplx fb, double tol, int depth) {
        cplx mid = 0.5 * (a + b);
        cplx fm = log_derivative(s, mid, eps);
        cplx whole = 0.5 * (fa + fb) * (b - a);
        cplx halves = 0.25 * (fa + fm) * (b - a) + 0.25 * (fm + fb) * (b - a);
        if (std::abs(halves - whole) <= tol || depth >= max_depth) {
            if (depth >= max_depth && std::abs(halves - whole) > tol)
                throw NoConvergenceError("argument principle: edge bisection depth exceeded");
            return halves;
        }
        return integrate(a, mid, fa, fm, 0.5 * tol, depth + 1) +
               integrate(mid, b, fm, fb, 0.5 * tol, depth + 1);
    }
};

}  // namespace

ZeroCountResult count_zeros_rectangle(const Series& s, const Rectangle& box, double eps,
                                      int initial_samples_per_edge) {
    if (!(box.sigma_lo > 1.01))
        throw ValidationError("count_zeros_rectangle: box must lie in sigma > 1.01");
    if (!(box.sigma_hi > box.sigma_lo) || !(box.t_hi > box.t_lo))
        throw ValidationError("count_zeros_rectangle: degenerate box");

    const cplx corners[4] = {
        {box.sigma_lo, box.t_lo}, {box.sigma_hi, box.t_lo},
        {box.sigma_hi, box.t_hi}, {box.sigma_lo, box.t_hi}};

    // Precondition: boundary values bounded away from zero.
    double min_mod = std::numeric_limits<double>::infinity();
    for (int e = 0; e < 4; ++e) {
        cplx a = corners[e], b = corners[(e + 1) % 4];
        for (int k = 0; k <= initial_samples_per_edge; ++k) {
            cplx z = a + (b - a) * (static_cast<double>(k) / initial_samples_per_edge);
            min_mod = std::min(min_mod, std::abs(evaluate(s, z, eps).value));
        }
    }
    if (min_mod <= 100.0 * eps)
        throw BoundaryTooCloseError("count_zeros_rectangle: boundary minimum " +
                                    std::to_string(min_mod) + " within 100x eval tolerance");

    EdgeIntegrator integ{s, eps, 20};
    cplx total{0.0, 0.0};
    for (int e = 0; e < 4; ++e) {
        cplx a = corners[e], b = corners[(e + 1) % 4];
        // seed the adaptive pass at the initial sampling resolution
        cplx prev = a, fprev = log_derivative(s, a, eps);
        for (int k = 1; k <= initial_samples_per_edge; ++k) {
            cplx z = a + (b - a) * (static_cast<double>(k) / initial_samples_per_edge);
            cplx fz = log_derivative(s, z, eps);
            total += integ.integrate(prev, z, fprev, fz, 0.02 / initial_samples_per_edge, 0);
            prev = z;
            fprev = fz;
        }
    }
    double raw = (total / (2.0 * std::numbers::pi * cplx{0.0, 1.0})).real();
    ZeroCountResult r;
    r.raw_integral = raw;
    r.count = static_cast<int>(std::lround(raw));
    r.residual = std::abs(raw - r.count);
    if (r.residual >= 0.25)
        throw NoConvergenceError("argument principle: residual " + std::to_string(r.residual) +
                                 " >= 0.25");
    if (r.count < 0)
        throw NoConvergenceError("argument principle: negative winding (no zeros/poles model)");
    return r;
}

cplx refine_zero(const Series& s, cplx seed, const RefineOptions& opts) {
    cplx z = seed;
    double last_step = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opts.max_steps; ++it) {
        if (!(z.real() >= 1.01))
            throw DivergedError("refine_zero: iterate left the half-plane sigma > 1.01");
        EvalResult v = evaluate(s, z, opts.eps_newton);
        EvalResult d = evaluate_derivative(s, z, opts.eps_newton);
        if (std::abs(d.value) < 1e-14)
            throw DivergedError("refine_zero: derivative vanished at the iterate");
        cplx step = v.value / d.value;
        z -= step;
        last_step = std::abs(step);
        if (last_step <= opts.step_tol) break;
    }
    if (last_step > opts.step_tol)
        throw DivergedError("refine_zero: step " + std::to_string(last_step) +
                            " above tolerance after max steps");
    if (!(z.real() >= 1.01))
        throw DivergedError("refine_zero: converged outside sigma > 1.01");
    EvalResult cert = evaluate(s, z, opts.eps_certify);
    if (std::abs(cert.value) > opts.value_tol)
        throw DivergedError("refine_zero: |L| = " + std::to_string(std::abs(cert.value)) +
                            " above value tolerance");
    return z;
}

SigmaStarReport estimate_sigma_star(const Series& s, const ScanConfig& cfg, double zero_tol) {
    ScanResult scan = min_modulus_scan(s, cfg);
    SigmaStarReport rep;

    for (const auto& row : scan.rows) {
        if (row.min_modulus > zero_tol) continue;
        if (row.min_modulus <= 10.0 * row.tail_bound) {
            // cannot be distinguished from truncation noise
            rep.tail_artifact_rows.push_back(row.sigma);
            continue;
        }
        bool confirmed = false;
        for (double dt_off : {0.0, cfg.dt, -cfg.dt}) {
            try {
                cplx z = refine_zero(s, cplx{row.sigma, row.argmin_t + dt_off});
                rep.zeros.push_back({z, row.sigma, std::abs(evaluate(s, z, 1e-10).value)});
                confirmed = true;
                break;
            } catch (const DivergedError&) {
            }
        }
        if (!confirmed) rep.unresolved_rows.push_back(row.sigma);
    }
    if (rep.zeros.empty()) throw NoZerosFoundError("estimate_sigma_star: no confirmed zeros");

    double sigma_low = 0.0;
    for (const auto& z : rep.zeros) sigma_low = std::max(sigma_low, z.row_sigma);
    rep.sigma_low = sigma_low;

    // sigma_high: first grid sigma above sigma_low such that every row in
    // [sigma_high, sigma_high + 1] stays above 10 * zero_tol.
    const auto& rows = scan.rows;
    const std::size_t window = static_cast<std::size_t>(std::ceil(1.0 / cfg.dsigma));
    rep.sigma_high = rows.back().sigma;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].sigma <= sigma_low) continue;
        bool clean = true;
        if (i + window >= rows.size()) break;
        for (std::size_t j = i; j <= i + window; ++j)
            if (rows[j].min_modulus <= 10.0 * zero_tol) {
                clean = false;
                break;
            }
        if (clean) {
            rep.sigma_high = rows[i].sigma;
            break;
        }
    }
    return rep;
}

}  // namespace zerostrip
