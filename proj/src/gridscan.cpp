#include "zerostrip/gridscan.hpp"

#include <cmath>

#include "zerostrip/errors.hpp"

namespace zerostrip {

namespace {
constexpr std::size_t kRestartInterval = 1024;
}

std::size_t grid_count(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) throw ValidationError("grid range: need step > 0 and hi >= lo");
    return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

GridMeta grid_foreach(const Series& s, const GridRequest& req,
                      const std::function<void(std::size_t, cplx)>& sink) {
    if (!(req.sigma >= 1.01)) throw DomainError("grid: sigma >= 1.01 required");
    if (!(req.dt > 0.0) && req.count > 1) throw ValidationError("grid: dt > 0 required");

    GridMeta meta;
    if (req.fixed_terms > 0) {
        meta.terms = req.fixed_terms;
        meta.tail_bound = tail_bound_at(s, req.sigma, req.fixed_terms);
        meta.warning = !s.coeff_bound().rigorous;
    } else {
        Truncation tr = truncation_length(s, req.sigma, req.eps, req.n_max);
        meta.terms = tr.terms;
        meta.tail_bound = tr.bound;
        meta.warning = tr.capped || !s.coeff_bound().rigorous;
    }

    const std::size_t n = meta.terms;
    std::vector<cplx> coeffs(n);
    s.fill_coefficients(1, n, coeffs.data());

    // SoA state for the rotor sweep
    std::vector<double> ln(n), br(n), bi(n), rr(n), ri(n), zr(n), zi(n);
    for (std::size_t k = 0; k < n; ++k) {
        double nn = static_cast<double>(k + 1);
        ln[k] = std::log(nn);
        double mag = std::exp(-req.sigma * ln[k]);
        br[k] = coeffs[k].real() * mag;
        bi[k] = coeffs[k].imag() * mag;
        double ang = -req.dt * ln[k];
        rr[k] = std::cos(ang);
        ri[k] = std::sin(ang);
    }

    for (std::size_t j0 = 0; j0 < req.count; j0 += kRestartInterval) {
        const double tb = req.t0 + req.dt * static_cast<double>(j0);
        for (std::size_t k = 0; k < n; ++k) {
            double ang = -tb * ln[k];
            double c = std::cos(ang), sn = std::sin(ang);
            zr[k] = br[k] * c - bi[k] * sn;
            zi[k] = br[k] * sn + bi[k] * c;
        }
        const std::size_t jend = std::min(req.count, j0 + kRestartInterval);
        for (std::size_t j = j0; j < jend; ++j) {
            double sumr = 0.0, sumi = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                sumr += zr[k];
                sumi += zi[k];
                double tr_ = zr[k] * rr[k] - zi[k] * ri[k];
                zi[k] = zr[k] * ri[k] + zi[k] * rr[k];
                zr[k] = tr_;
            }
            sink(j, cplx{sumr, sumi});
        }
    }
    return meta;
}

std::vector<cplx> evaluate_grid(const Series& s, const GridRequest& req, GridMeta* meta) {
    std::vector<cplx> out(req.count);
    GridMeta m = grid_foreach(s, req, [&](std::size_t j, cplx v) { out[j] = v; });
    if (meta) *meta = m;
    return out;
}

}  // namespace zerostrip
