#include "zerostrip/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zerostrip/errors.hpp"
#include "zerostrip/primes.hpp"

namespace zerostrip {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

cplx TrigPolynomial::eval(const std::vector<double>& theta) const {
    cplx sum{0.0, 0.0};
    for (const auto& t : terms) {
        double ang = 0.0;
        for (std::size_t i = 0; i < t.freq.size(); ++i) ang += t.freq[i] * theta[i];
        ang *= kTwoPi;
        sum += t.coeff * cplx{std::cos(ang), std::sin(ang)};
    }
    return sum;
}

cplx TrigPolynomial::constant_term() const {
    cplx c{0.0, 0.0};
    for (const auto& t : terms) {
        bool zero = true;
        for (int f : t.freq) zero = zero && f == 0;
        if (zero) c += t.coeff;
    }
    return c;
}

cplx kw_time_average(const TrigPolynomial& poly, const std::vector<double>& lambdas, double t1,
                     double t2, double quad_step) {
    if (static_cast<int>(lambdas.size()) != poly.dimension)
        throw ValidationError("kw_time_average: lambda arity mismatch");
    if (!(t2 > t1) || !(quad_step > 0.0))
        throw ValidationError("kw_time_average: need t2 > t1 and step > 0");
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        for (std::size_t j = i + 1; j < lambdas.size(); ++j)
            if (lambdas[i] == lambdas[j])
                throw ValidationError("kw_time_average: lambdas must be pairwise distinct");

    // Each term is c e^{2 pi i (m . lambda) t}: sweep all terms with rotors.
    const std::size_t steps = static_cast<std::size_t>(std::floor((t2 - t1) / quad_step + 1e-9));
    const std::size_t n_terms = poly.terms.size();
    std::vector<double> omega(n_terms);
    for (std::size_t k = 0; k < n_terms; ++k) {
        double w = 0.0;
        for (std::size_t i = 0; i < lambdas.size(); ++i) w += poly.terms[k].freq[i] * lambdas[i];
        omega[k] = kTwoPi * w;
    }
    std::vector<cplx> z(n_terms), rot(n_terms);
    cplx acc{0.0, 0.0};
    constexpr std::size_t kResynth = 1 << 20;
    for (std::size_t k = 0; k < n_terms; ++k)
        rot[k] = {std::cos(omega[k] * quad_step), std::sin(omega[k] * quad_step)};

    auto value_at = [&](std::size_t j) {
        cplx s{0.0, 0.0};
        for (std::size_t k = 0; k < n_terms; ++k) s += poly.terms[k].coeff * z[k];
        (void)j;
        return s;
    };

    for (std::size_t j0 = 0; j0 <= steps; j0 += kResynth) {
        double tb = t1 + quad_step * static_cast<double>(j0);
        for (std::size_t k = 0; k < n_terms; ++k)
            z[k] = {std::cos(omega[k] * tb), std::sin(omega[k] * tb)};
        std::size_t jend = std::min(steps, j0 + kResynth - 1);
        for (std::size_t j = j0; j <= jend; ++j) {
            cplx v = value_at(j);
            double weight = (j == 0 || j == steps) ? 0.5 : 1.0;
            acc += weight * v;
            for (std::size_t k = 0; k < n_terms; ++k) z[k] *= rot[k];
        }
    }
    double span = quad_step * static_cast<double>(steps);
    return acc * quad_step / span;
}

cplx kw_time_average(const std::function<cplx(const std::vector<double>&)>& h, int dimension,
                     const std::vector<double>& lambdas, double t1, double t2, double quad_step) {
    if (static_cast<int>(lambdas.size()) != dimension)
        throw ValidationError("kw_time_average: lambda arity mismatch");
    const std::size_t steps = static_cast<std::size_t>(std::floor((t2 - t1) / quad_step + 1e-9));
    cplx acc{0.0, 0.0};
    std::vector<double> theta(lambdas.size());
    for (std::size_t j = 0; j <= steps; ++j) {
        double t = t1 + quad_step * static_cast<double>(j);
        for (std::size_t i = 0; i < lambdas.size(); ++i) theta[i] = lambdas[i] * t;
        double weight = (j == 0 || j == steps) ? 0.5 : 1.0;
        acc += weight * h(theta);
    }
    double span = quad_step * static_cast<double>(steps);
    return acc * quad_step / span;
}

cplx torus_integral(const TrigPolynomial& poly) { return poly.constant_term(); }

namespace {

// Gauss-Legendre nodes and weights on [0,1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            double dp = n * (t * p0 - p1) / (t * t - 1.0);
            double dt = p0 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
        }
        double dp = n * (t * p0 - p1) / (t * t - 1.0);
        x[i] = 0.5 * (1.0 - t);
        w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
}

cplx tensor_quadrature(const std::function<cplx(const std::vector<double>&)>& h, int dim,
                       const std::vector<double>& x, const std::vector<double>& w) {
    const int n = static_cast<int>(x.size());
    std::vector<int> idx(dim, 0);
    std::vector<double> theta(dim);
    cplx sum{0.0, 0.0};
    for (;;) {
        double weight = 1.0;
        for (int d = 0; d < dim; ++d) {
            theta[d] = x[idx[d]];
            weight *= w[idx[d]];
        }
        sum += weight * h(theta);
        int d = 0;
        while (d < dim && ++idx[d] == n) {
            idx[d] = 0;
            ++d;
        }
        if (d == dim) break;
    }
    return sum;
}

}  // namespace

TorusIntegralResult torus_integral(const std::function<cplx(const std::vector<double>&)>& h,
                                   int dimension) {
    if (dimension > 4)
        throw DimensionTooLargeError("torus_integral: tensor quadrature limited to n <= 4");
    std::vector<double> x32, w32, x64, w64;
    gauss_legendre(32, x32, w32);
    gauss_legendre(64, x64, w64);
    cplx coarse = tensor_quadrature(h, dimension, x32, w32);
    cplx fine = tensor_quadrature(h, dimension, x64, w64);
    return {fine, std::abs(fine - coarse)};
}

// ---------------------------------------------------------------------------
// Local-factor integrands and kappa integrals
// ---------------------------------------------------------------------------

namespace {

// log F_p and (F'/F)_p as closures in the local variable
// x = p^{-sigma} e^{-2 pi i theta}.
struct LocalFactorEval {
    // closures per basis element
    std::vector<std::function<cplx(cplx)>> logs;    // x -> log F_p
    std::vector<std::function<cplx(cplx)>> dlogs;   // x -> (F'/F)_p, includes -log p factor

    static std::function<cplx(cplx)> make_log(const Series& s, uint64_t p) {
        switch (s.kind()) {
            case SeriesKind::Zeta:
                return [](cplx x) { return -std::log(cplx{1.0, 0.0} - x); };
            case SeriesKind::CharacterL: {
                cplx a = euler_b_values(s, p, 1)[0];  // chi(p)
                return [a](cplx x) { return -std::log(cplx{1.0, 0.0} - a * x); };
            }
            case SeriesKind::Convolution: {
                auto la = make_log(s.conv_lhs(), p);
                auto lb = make_log(s.conv_rhs(), p);
                return [la, lb](cplx x) { return la(x) + lb(x); };
            }
            case SeriesKind::Inverse: {
                auto la = make_log(s.inverse_of(), p);
                return [la](cplx x) { return -la(x); };
            }
            default:
                throw NoEulerProductError("local factor: series kind has no Euler product");
        }
    }

    static std::function<cplx(cplx)> make_dlog(const Series& s, uint64_t p) {
        double lp = std::log(static_cast<double>(p));
        switch (s.kind()) {
            case SeriesKind::Zeta:
                return [lp](cplx x) { return -lp * x / (cplx{1.0, 0.0} - x); };
            case SeriesKind::CharacterL: {
                cplx a = euler_b_values(s, p, 1)[0];
                return [a, lp](cplx x) { return -lp * a * x / (cplx{1.0, 0.0} - a * x); };
            }
            case SeriesKind::Convolution: {
                auto la = make_dlog(s.conv_lhs(), p);
                auto lb = make_dlog(s.conv_rhs(), p);
                return [la, lb](cplx x) { return la(x) + lb(x); };
            }
            case SeriesKind::Inverse: {
                auto la = make_dlog(s.inverse_of(), p);
                return [la](cplx x) { return -la(x); };
            }
            default:
                throw NoEulerProductError("local factor: series kind has no Euler product");
        }
    }
};

// Adaptive Simpson on [a,b] for a complex integrand.
cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b, cplx fa, cplx fm,
                      cplx fb, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    cplx flm = f(lm), frm = f(rm);
    cplx whole = (fa + 4.0 * fm + fb) * ((b - a) / 6.0);
    cplx left = (fa + 4.0 * flm + fm) * ((m - a) / 6.0);
    cplx right = (fm + 4.0 * frm + fb) * ((b - m) / 6.0);
    cplx delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth >= 28) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth + 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth + 1);
}

cplx oscillatory_integral(const std::function<cplx(double)>& f,
                          const std::function<double(double)>& phase, double amplitude,
                          double abs_tol) {
    // panel boundaries: phase extrema (sampled) plus enough uniform panels
    // to resolve the oscillation
    std::vector<double> cuts{0.0, 1.0};
    if (amplitude > 1e3) {
        const int probe = 4096;
        double prev = phase(0.0), prev2 = phase(1.0 / probe);
        for (int i = 2; i <= probe; ++i) {
            double cur = phase(static_cast<double>(i) / probe);
            // sign change of the discrete derivative marks an extremum
            if ((prev2 - prev) * (cur - prev2) < 0.0)
                cuts.push_back(static_cast<double>(i - 1) / probe);
            prev = prev2;
            prev2 = cur;
        }
    }
    int uniform = std::clamp(static_cast<int>(amplitude / 3.0), 8, 1 << 14);
    for (int i = 1; i < uniform; ++i) cuts.push_back(static_cast<double>(i) / uniform);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    cplx total{0.0, 0.0};
    double tol_per = abs_tol / static_cast<double>(cuts.size());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
        total += adaptive_simpson(f, a, b, fa, fm, fb, tol_per, 0);
    }
    return total;
}

}  // namespace

KappaTriple kappa_integrals(const std::vector<Series>& basis, uint64_t p, double sigma,
                            const std::vector<cplx>& y, std::size_t j, double abs_tol) {
    if (!(sigma >= 1.0)) throw DomainError("kappa_integrals: sigma >= 1 required");
    if (j >= basis.size()) throw ValidationError("kappa_integrals: j out of range");
    if (y.size() != basis.size()) throw ValidationError("kappa_integrals: y arity mismatch");

    LocalFactorEval lf;
    for (const auto& s : basis) {
        lf.logs.push_back(LocalFactorEval::make_log(s, p));
        lf.dlogs.push_back(LocalFactorEval::make_dlog(s, p));
    }
    const double ps = std::pow(static_cast<double>(p), -sigma);

    auto xval = [ps](double theta) {
        double ang = -kTwoPi * theta;
        return cplx{ps * std::cos(ang), ps * std::sin(ang)};
    };
    auto gval = [&](double theta) {
        cplx x = xval(theta);
        double g = 0.0;
        for (std::size_t h = 0; h < basis.size(); ++h)
            g += (std::conj(y[h]) * lf.logs[h](x)).real();
        return g;
    };

    double ynorm = 0.0;
    for (const auto& v : y) ynorm += std::norm(v);
    ynorm = std::sqrt(ynorm);
    double amplitude = ynorm * std::sqrt(static_cast<double>(basis.size())) * 2.0 *
                       std::abs(std::log1p(-ps));

    KappaTriple kt;
    kt.k0 = oscillatory_integral(
        [&](double th) {
            double g = gval(th);
            return cplx{std::cos(g), std::sin(g)};
        },
        gval, amplitude, abs_tol);
    kt.k1 = oscillatory_integral(
        [&](double th) {
            double g = gval(th);
            return cplx{std::cos(g), std::sin(g)} * lf.dlogs[j](xval(th));
        },
        gval, amplitude, abs_tol);
    kt.k2 = oscillatory_integral(
        [&](double th) {
            double g = gval(th);
            return cplx{std::cos(g), std::sin(g)} * std::norm(lf.dlogs[j](xval(th)));
        },
        gval, amplitude, abs_tol);
    return kt;
}

double kappa1_bound(const std::vector<Series>& basis, uint64_t p, double sigma,
                    const std::vector<cplx>& y, std::size_t j) {
    double theta_max = 0.0, sumK2 = 0.0;
    for (const auto& s : basis) {
        if (!s.euler()) throw NoEulerProductError("kappa1_bound: basis must have Euler products");
        theta_max = std::max(theta_max, s.euler()->theta);
        sumK2 += s.euler()->K * s.euler()->K;
    }
    double Kj = basis[j].euler()->K;
    double w = std::pow(static_cast<double>(p), -(sigma - theta_max));
    double uj = std::pow(static_cast<double>(p), -(sigma - basis[j].euler()->theta));
    double ynorm = 0.0;
    for (const auto& v : y) ynorm += std::norm(v);
    ynorm = std::sqrt(ynorm);
    double lp = std::log(static_cast<double>(p));
    return ynorm * Kj * std::sqrt(sumK2) * lp * w * uj / ((1.0 - w) * (1.0 - uj) * (1.0 - uj));
}

double kappa2_bound(const std::vector<Series>& basis, uint64_t p, double sigma, std::size_t j) {
    if (!basis[j].euler()) throw NoEulerProductError("kappa2_bound: basis must have Euler products");
    double Kj = basis[j].euler()->K;
    double uj = std::pow(static_cast<double>(p), -(sigma - basis[j].euler()->theta));
    double lp = std::log(static_cast<double>(p));
    return Kj * Kj * lp * lp * uj * uj / std::pow(1.0 - uj, 4);
}

DecayReport verify_k0_decay(const std::vector<Series>& basis, double sigma,
                            const std::vector<uint64_t>& primes,
                            const std::vector<std::vector<cplx>>& directions,
                            const std::vector<double>& norms) {
    if (!(sigma >= 1.0)) throw DomainError("verify_k0_decay: sigma >= 1 required");
    DecayReport rep;
    rep.sigma = sigma;
    for (uint64_t p : primes) {
        for (const auto& dir : directions) {
            DecayFitDirection fit;
            fit.direction = dir;
            fit.p = p;

            // qualifying-prime selection: |sum conj(y_j) b_j(p) / sqrt(m_jj)| >= ||y||
            // (for unit ||y||); m_jj = 1 for the character / zeta bases here.
            cplx lead{0.0, 0.0};
            for (std::size_t j = 0; j < basis.size(); ++j)
                lead += std::conj(dir[j]) * euler_b_values(basis[j], p, 1)[0];
            double dirnorm = 0.0;
            for (const auto& v : dir) dirnorm += std::norm(v);
            dirnorm = std::sqrt(dirnorm);
            fit.qualifying = std::abs(lead) >= dirnorm * (1.0 - 1e-12);

            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            double bestA = 0.0;
            for (double nrm : norms) {
                std::vector<cplx> yv(dir.size());
                for (std::size_t j = 0; j < dir.size(); ++j) yv[j] = nrm * dir[j];
                KappaTriple kt = kappa_integrals(basis, p, sigma, yv, 0, 1e-10);
                double k0 = std::abs(kt.k0);
                fit.norms.push_back(nrm);
                fit.k0_values.push_back(k0);
                double lx = std::log(nrm);
                double ly = std::log(std::max(k0, 1e-300));
                sx += lx;
                sy += ly;
                sxx += lx * lx;
                sxy += lx * ly;
                bestA = std::max(bestA, k0 * std::sqrt(nrm) *
                                            std::pow(static_cast<double>(p), -sigma / 2.0));
            }
            double nn = static_cast<double>(norms.size());
            double denom = nn * sxx - sx * sx;
            fit.fitted_exponent = denom != 0.0 ? (nn * sxy - sx * sy) / denom : 0.0;
            fit.best_A = bestA;
            fit.flagged = fit.fitted_exponent > -0.4;
            rep.fits.push_back(std::move(fit));
        }
    }
    return rep;
}

}  // namespace zerostrip
