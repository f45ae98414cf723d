#include "zerostrip/strips.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "zerostrip/errors.hpp"

namespace zerostrip {

namespace {

constexpr double kZeroTol = 1e-8;       // matches the 8-decimal computational standard
constexpr double kEvalEps = 1e-12;
constexpr double kBetaCap = 60.0;

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Evaluate all basis members at a real point, with a combined tail estimate.
struct BasisValues {
    std::vector<cplx> values;
    std::vector<double> tails;
};

BasisValues eval_basis(const std::vector<Series>& basis, double sigma) {
    BasisValues out;
    for (const auto& f : basis) {
        EvalResult r = evaluate(f, {sigma, 0.0}, kEvalEps);
        out.values.push_back(r.value);
        out.tails.push_back(r.tail_bound);
    }
    return out;
}

cplx dot_combination(const std::vector<cplx>& v, const BasisValues& fv, double* tail_out) {
    cplx sum{0.0, 0.0};
    double tail = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        sum += v[j] * fv.values[j];
        tail += std::abs(v[j]) * fv.tails[j];
    }
    if (tail_out) *tail_out = tail;
    return sum;
}

Series combination_series(const std::vector<Series>& basis, const std::vector<cplx>& c) {
    std::vector<std::pair<cplx, Series>> terms;
    for (std::size_t j = 0; j < basis.size(); ++j) terms.emplace_back(c[j], basis[j]);
    return Series::linear_combination(std::move(terms));
}

void normalize_last_nonzero(std::vector<cplx>& v) {
    double mx = 0.0;
    for (const auto& x : v) mx = std::max(mx, std::abs(x));
    if (mx == 0.0) throw RankDeficientError("null vector is identically zero");
    std::size_t last = v.size();
    for (std::size_t j = v.size(); j-- > 0;) {
        if (std::abs(v[j]) > 1e-12 * mx) {
            last = j;
            break;
        }
    }
    cplx pivot = v[last];
    for (auto& x : v) x /= pivot;
}

// One-dimensional null space of an (N-1) x N complex matrix, via SVD.
std::vector<cplx> null_space_generator(const MatrixXcd& m, double rank_tol = 1e-10) {
    Eigen::JacobiSVD<MatrixXcd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    long null_dim = m.cols() - m.rows();
    for (long i = 0; i < sv.size(); ++i)
        if (sv(i) <= rank_tol * std::max(smax, 1.0)) ++null_dim;
    if (null_dim != 1) {
        std::ostringstream os;
        os << "null space has dimension " << null_dim << " at tolerance " << rank_tol
           << " (need 1)";
        throw RankDeficientError(os.str());
    }
    VectorXcd k = svd.matrixV().col(m.cols() - 1);
    std::vector<cplx> v(k.data(), k.data() + k.size());
    normalize_last_nonzero(v);
    return v;
}

struct StripScan {
    double min_combo = 0.0;      // min |L_v| over the strip grid
    double max_tail = 0.0;       // worst per-point tail bound
    double max_basis = 0.0;      // max over j, grid of |F_j|
};

ScanConfig strip_config(const ScanConfig& base, double lo, double hi) {
    ScanConfig c = base;
    c.sigma_lo = lo;
    c.sigma_hi = hi;
    c.threshold = 0.0;
    return c;
}

StripScan scan_strip(const std::vector<Series>& basis, const std::vector<cplx>& v,
                     const ScanConfig& cfg) {
    StripScan out;
    Series combo = combination_series(basis, v);
    ScanResult r = min_modulus_scan(combo, cfg);
    out.min_combo = std::numeric_limits<double>::infinity();
    for (const auto& row : r.rows) {
        out.min_combo = std::min(out.min_combo, row.min_modulus);
        out.max_tail = std::max(out.max_tail, row.tail_bound);
    }
    for (const auto& f : basis) {
        const std::size_t n_sigma = grid_count(cfg.sigma_lo, cfg.sigma_hi, cfg.dsigma);
        const std::size_t n_t = grid_count(cfg.t_lo, cfg.t_hi, cfg.dt);
        for (std::size_t i = 0; i < n_sigma; ++i) {
            GridRequest req;
            req.sigma = cfg.sigma_lo + cfg.dsigma * static_cast<double>(i);
            req.t0 = cfg.t_lo;
            req.dt = cfg.dt;
            req.count = n_t;
            req.eps = cfg.eps;
            grid_foreach(f, req, [&](std::size_t, cplx z) {
                out.max_basis = std::max(out.max_basis, std::abs(z));
            });
        }
    }
    return out;
}

// Largest sigma row that could plausibly hide a zero: row minimum below
// max(20 * tail, 2% of the largest row minimum seen).
double empirical_sigma_star(const ScanResult& scan) {
    double max_min = 0.0;
    for (const auto& r : scan.rows) max_min = std::max(max_min, r.min_modulus);
    double sstar = scan.config.sigma_lo - scan.config.dsigma;
    for (const auto& r : scan.rows) {
        double tol = std::max(20.0 * r.tail_bound, 0.02 * max_min);
        if (r.min_modulus <= tol) sstar = std::max(sstar, r.sigma);
    }
    return sstar;
}

}  // namespace

Series CoefficientVector::combination() const { return combination_series(basis, entries); }

void HoleCertificate::validate() const {
    for (std::size_t i = 1; i < betas.size(); ++i)
        if (!(betas[i] > betas[i - 1]))
            throw NumericalError("certificate: betas must be strictly increasing");
    if (strips.size() != betas.size())
        throw NumericalError("certificate: one strip per beta expected");
    for (std::size_t i = 0; i < strips.size(); ++i) {
        if (!(strips[i].sigma_hi < betas[i]))
            throw NumericalError("certificate: strip must end below its beta");
        if (!(strips[i].delta > 0.0))
            throw NumericalError("certificate: strip lower bound must be positive");
    }
    for (double r : beta_residuals)
        if (!(r <= kZeroTol))
            throw NumericalError("certificate: beta residual above zero tolerance");
}

cplx check_det_condition(const std::vector<Series>& basis) {
    const std::size_t n = basis.size();
    if (n < 2) throw ValidationError("check_det_condition: N >= 2 required");
    MatrixXcd m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        auto coeffs = basis[j].coefficients(n);
        for (std::size_t k = 0; k < n; ++k) m(static_cast<long>(j), static_cast<long>(k)) = coeffs[k];
    }
    cplx det = m.determinant();
    if (std::abs(det) <= 1e-12)
        throw SingularCoefficientMatrixError("leading coefficient matrix is singular (|det| = " +
                                             std::to_string(std::abs(det)) + ")");
    return det;
}

std::vector<BasisVector> hyperplane_basis(const std::vector<Series>& basis, double sigma,
                                          double eps) {
    (void)eps;
    const std::size_t n = basis.size();
    if (n < 2) throw ValidationError("hyperplane_basis: N >= 2 required");
    BasisValues fv = eval_basis(basis, sigma);
    for (std::size_t j = 0; j < n; ++j)
        if (std::abs(fv.values[j]) <= 10.0 * fv.tails[j])
            throw EvaluationTooCloseError("hyperplane_basis: |F_" + std::to_string(j + 1) +
                                          "(sigma)| within 10x tail bound");
    std::vector<BasisVector> out;
    for (std::size_t j = 1; j < n; ++j) {
        BasisVector v;
        v.level = 1;
        v.sigmas = {sigma};
        v.entries.assign(n, cplx{0.0, 0.0});
        v.entries[0] = -1.0 / fv.values[0];
        v.entries[j] = 1.0 / fv.values[j];
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<BasisVector> inductive_step(const std::vector<Series>& basis,
                                        const std::vector<BasisVector>& level_vectors,
                                        double sigma_h, double eps) {
    (void)eps;
    if (level_vectors.size() < 2)
        throw ValidationError("inductive_step: need at least two vectors (pivot + targets)");
    for (const auto& v : level_vectors)
        for (double s0 : v.sigmas)
            if (!(sigma_h > s0))
                throw ValidationError("inductive_step: sigma_h must exceed all sigmas in use");

    BasisValues fv = eval_basis(basis, sigma_h);
    const BasisVector& pivot = level_vectors.front();
    double pivot_tail = 0.0;
    cplx pivot_val = dot_combination(pivot.entries, fv, &pivot_tail);
    if (std::abs(pivot_val) <= 10.0 * pivot_tail)
        throw PivotVanishesError(
            "inductive_step: pivot combination vanishes at sigma_h = " + std::to_string(sigma_h) +
            " (|L| = " + std::to_string(std::abs(pivot_val)) + ")");

    std::vector<BasisVector> out;
    for (std::size_t i = 1; i < level_vectors.size(); ++i) {
        const BasisVector& vj = level_vectors[i];
        cplx num = dot_combination(vj.entries, fv, nullptr);
        cplx ratio = num / pivot_val;
        BasisVector next;
        next.level = pivot.level + 1;
        next.sigmas = vj.sigmas;
        next.sigmas.push_back(sigma_h);
        next.entries.resize(vj.entries.size());
        for (std::size_t k = 0; k < vj.entries.size(); ++k)
            next.entries[k] = vj.entries[k] - ratio * pivot.entries[k];
        out.push_back(std::move(next));
    }
    return out;
}

BasisVector limit_vector(const std::vector<Series>& basis,
                         const std::vector<double>& finite_sigmas) {
    const std::size_t n = basis.size();
    if (n < 2) throw ValidationError("limit_vector: N >= 2 required");
    const std::size_t m = finite_sigmas.size() + 1;
    if (m > n) throw ValidationError("limit_vector: too many finite sigmas");
    for (std::size_t i = 0; i < finite_sigmas.size(); ++i) {
        if (!(finite_sigmas[i] >= 1.01))
            throw ValidationError("limit_vector: sigmas must be >= 1.01");
        if (i > 0 && !(finite_sigmas[i] > finite_sigmas[i - 1]))
            throw ValidationError("limit_vector: sigmas must be strictly increasing");
    }

    MatrixXcd sys(n - 1, n);
    long row = 0;
    for (double s0 : finite_sigmas) {
        BasisValues fv = eval_basis(basis, s0);
        for (std::size_t j = 0; j < n; ++j) sys(row, static_cast<long>(j)) = fv.values[j];
        ++row;
    }
    for (std::size_t nn = 1; nn <= n - m; ++nn) {
        for (std::size_t j = 0; j < n; ++j)
            sys(row, static_cast<long>(j)) = basis[j].coefficient(nn);
        ++row;
    }

    BasisVector v;
    v.level = static_cast<int>(n - 1);
    v.sigmas = finite_sigmas;
    v.entries = null_space_generator(sys);
    return v;
}

// ---------------------------------------------------------------------------
// Theorem-style constructions
// ---------------------------------------------------------------------------

ConstructResult construct_one_hole(const std::vector<Series>& basis, const ScanConfig& scan) {
    scan.validate();
    const std::size_t n = basis.size();
    if (n < 2) throw ValidationError("construct_one_hole: N >= 2 required");

    std::vector<cplx> a1(n);
    double a1_abs = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        a1[j] = basis[j].coefficient(1);
        a1_abs += std::abs(a1[j]);
    }
    if (a1_abs == 0.0)
        throw ValidationError("construct_one_hole: sum |a_j(1)| must be nonzero");

    // c0 on the hyperplane sum c_j a_j(1) = 0
    std::vector<cplx> c0(n, cplx{0.0, 0.0});
    std::size_t i1 = n, i2 = n;
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(a1[j]) == 0.0) continue;
        if (i1 == n)
            i1 = j;
        else if (i2 == n)
            i2 = j;
    }
    if (i2 != n) {
        c0[i1] = a1[i2];
        c0[i2] = -a1[i1];
    } else {
        c0[i1 == 0 ? 1 : 0] = 1.0;  // only one nonzero a_j(1): any other axis works
    }

    // empirical sigma* of L_{c0}, then a strip above it
    Series combo0 = combination_series(basis, c0);
    ScanResult wide = min_modulus_scan(combo0, scan);
    double sigma_star = empirical_sigma_star(wide);

    double sigma1 = std::max(sigma_star + 0.25, scan.sigma_lo);
    double eps_val = 0.0, max_tail = 0.0, m_bound = 0.0;
    StripScan ss;
    int attempts = 0;
    for (;; ++attempts) {
        if (attempts > 5 || sigma1 + 1.0 > kBetaCap)
            throw EpsilonZeroError("construct_one_hole: could not find a strip where L_{c0} "
                                   "stays away from zero");
        ScanConfig sc = strip_config(scan, sigma1, sigma1 + 1.0);
        ss = scan_strip(basis, c0, sc);
        eps_val = ss.min_combo;
        max_tail = ss.max_tail;
        m_bound = ss.max_basis;
        if (eps_val > 10.0 * max_tail) break;
        sigma1 += 1.0;
    }
    double sigma2 = sigma1 + 1.0;

    // advance beta until dist(c0, H(beta)) < eps / (4 sqrt(N) M)
    double target = eps_val / (4.0 * std::sqrt(static_cast<double>(n)) * m_bound);
    double beta = 0.0;
    bool found = false;
    for (double b = std::ceil(sigma2 + 1.0); b <= kBetaCap; b += 1.0) {
        BasisValues fv = eval_basis(basis, b);
        double norm2 = 0.0;
        for (const auto& z : fv.values) norm2 += std::norm(z);
        cplx l0 = dot_combination(c0, fv, nullptr);
        if (std::abs(l0) / std::sqrt(norm2) < target) {
            beta = b;
            found = true;
            break;
        }
    }
    if (!found)
        throw BetaNotFoundError("construct_one_hole: no beta <= " + std::to_string(kBetaCap) +
                                " satisfies the distance condition");

    // project c0 onto H(beta)
    BasisValues fb = eval_basis(basis, beta);
    double norm2 = 0.0;
    for (const auto& z : fb.values) norm2 += std::norm(z);
    cplx l0 = dot_combination(c0, fb, nullptr);
    std::vector<cplx> c = c0;
    for (std::size_t j = 0; j < n; ++j) c[j] -= l0 / norm2 * std::conj(fb.values[j]);

    ConstructResult res;
    res.coefficients.entries = c;
    res.coefficients.basis = basis;
    res.coefficients.provenance = "one_hole";
    res.coefficients.betas_used = {beta};

    HoleCertificate& cert = res.certificate;
    cert.scan_params = scan;
    cert.betas = {beta};
    cert.epsilons = {eps_val};
    cert.m_bounds = {m_bound};
    Series final_combo = combination_series(basis, c);
    cert.beta_residuals = {std::abs(evaluate(final_combo, {beta, 0.0}, kEvalEps).value)};
    ScanConfig strip_cfg = strip_config(scan, sigma1, sigma2);
    ScanResult strip_scan_result = min_modulus_scan(final_combo, strip_cfg);
    double delta = std::numeric_limits<double>::infinity();
    for (const auto& r : strip_scan_result.rows) delta = std::min(delta, r.min_modulus);
    cert.strips = {{sigma1, sigma2, delta}};
    cert.validate();
    return res;
}

ConstructResult construct_k_holes(const std::vector<Series>& basis, const ScanConfig& scan,
                                  const std::vector<double>& forced_betas) {
    scan.validate();
    const std::size_t n = basis.size();
    if (n < 2) throw ValidationError("construct_k_holes: N >= 2 required");
    if (n == 2 && forced_betas.empty()) return construct_one_hole(basis, scan);

    check_det_condition(basis);
    for (std::size_t j = 0; j < n; ++j)
        if (std::abs(basis[j].coefficient(1)) == 0.0)
            throw ValidationError("construct_k_holes: all a_j(1) must be nonzero");
    if (!forced_betas.empty() && forced_betas.size() != n - 1)
        throw ValidationError("construct_k_holes: need N-1 forced betas");

    std::vector<double> betas;
    std::vector<double> epsilons, m_bounds;
    std::vector<std::pair<double, double>> strip_ranges;
    double prev_delta = std::numeric_limits<double>::infinity();
    double running_m = 0.0;

    for (std::size_t h = 1; h <= n - 1; ++h) {
        BasisVector vh = limit_vector(basis, betas);

        // strip above the empirical sigma* of L_{v_h}
        double low_floor = betas.empty() ? scan.sigma_lo : betas.back() + 0.25;
        double sigma1;
        if (!forced_betas.empty()) {
            double beta_h = forced_betas[h - 1];
            sigma1 = std::max(low_floor, beta_h - 1.5);
        } else {
            Series combo = combination_series(basis, vh.entries);
            ScanResult wide = min_modulus_scan(combo, scan);
            sigma1 = std::max(empirical_sigma_star(wide) + 0.5, low_floor);
        }

        double eps_h = 0.0, m_h = 0.0;
        StripScan ss;
        int attempts = 0;
        for (;; ++attempts) {
            if (attempts > 5 || sigma1 + 1.0 > kBetaCap)
                throw EpsilonZeroError("construct_k_holes: stage " + std::to_string(h) +
                                       ": no clean strip found (sigma1 below sigma*?)");
            if (!forced_betas.empty() && sigma1 + 1.0 >= forced_betas[h - 1])
                throw EpsilonZeroError("construct_k_holes: stage " + std::to_string(h) +
                                       ": forced beta leaves no room for a strip");
            ScanConfig sc = strip_config(scan, sigma1, sigma1 + 1.0);
            ss = scan_strip(basis, vh.entries, sc);
            if (ss.min_combo > 10.0 * ss.max_tail) break;
            sigma1 += 1.0;
        }
        double sigma2 = sigma1 + 1.0;
        eps_h = std::min(prev_delta, ss.min_combo);
        running_m = std::max(running_m, ss.max_basis);
        m_h = running_m;

        double beta_h = 0.0;
        if (!forced_betas.empty()) {
            beta_h = forced_betas[h - 1];
            if (!(beta_h > sigma2))
                throw ValidationError("construct_k_holes: forced beta must exceed its strip");
            // keep the inductive quantities for the certificate record
        } else {
            double target = eps_h / (2.0 * std::sqrt(static_cast<double>(n)) * m_h);
            bool found = false;
            for (double b = std::ceil(sigma2 + 1.0); b <= kBetaCap; b += 1.0) {
                std::vector<double> trial = betas;
                trial.push_back(b);
                BasisVector vnext = limit_vector(basis, trial);
                double dist = 0.0;
                for (std::size_t k = 0; k < n; ++k) dist += std::norm(vnext.entries[k] - vh.entries[k]);
                dist = std::sqrt(dist);
                if (dist < target) {
                    beta_h = b;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw BetaNotFoundError("construct_k_holes: stage " + std::to_string(h) +
                                        ": no beta <= " + std::to_string(kBetaCap) +
                                        " within the vector-distance target");
        }

        betas.push_back(beta_h);
        epsilons.push_back(eps_h);
        m_bounds.push_back(m_h);
        strip_ranges.emplace_back(sigma1, sigma2);
        prev_delta = eps_h / 2.0;
    }

    BasisVector vfinal = limit_vector(basis, betas);

    ConstructResult res;
    res.coefficients.entries = vfinal.entries;
    res.coefficients.basis = basis;
    res.coefficients.provenance = "k_holes";
    res.coefficients.betas_used = betas;

    HoleCertificate& cert = res.certificate;
    cert.scan_params = scan;
    cert.betas = betas;
    cert.epsilons = epsilons;
    cert.m_bounds = m_bounds;
    Series final_combo = combination_series(basis, vfinal.entries);
    for (double b : betas)
        cert.beta_residuals.push_back(std::abs(evaluate(final_combo, {b, 0.0}, kEvalEps).value));
    for (const auto& [lo, hi] : strip_ranges) {
        ScanResult sr = min_modulus_scan(final_combo, strip_config(scan, lo, hi));
        double delta = std::numeric_limits<double>::infinity();
        for (const auto& r : sr.rows) delta = std::min(delta, r.min_modulus);
        cert.strips.push_back({lo, hi, delta});
    }
    cert.validate();
    return res;
}

CoefficientVector paper_closed_form_coefficients(std::size_t terms) {
    DirichletCharacter chi1 = find_character(5, {{2, cplx{0.0, 1.0}}});
    Series l1 = Series::character(chi1);
    Series l1b = Series::character(chi1.conjugate());
    Series z = Series::zeta();

    auto at = [&](const Series& s, double sigma) {
        return evaluate_fixed_terms(s, {sigma, 0.0}, terms).value;
    };
    cplx L8 = at(l1, 8), L8b = at(l1b, 8), L16 = at(l1, 16), L16b = at(l1b, 16);
    cplx z8 = at(z, 8), z16 = at(z, 16);

    cplx c2 = 1.0 / L8b;
    cplx c1 = -(1.0 / L8b) * (L16b * z8 - L8b * z16) / (L16 * z8 - L8 * z16);
    cplx c3 = (1.0 / L8b) * (L8 * L16b - L8b * L16) / (z8 * L16 - L8 * z16);

    CoefficientVector cv;
    cv.entries = {c1, c2, c3};
    cv.basis = {l1, l1b, z};
    cv.provenance = "paper_closed_form";
    cv.betas_used = {8.0, 16.0};
    return cv;
}

FuncEqResult construct_funceq(const std::vector<DirichletCharacter>& chars,
                              const std::vector<double>& tau_params, const ScanConfig& scan) {
    scan.validate();
    const std::size_t n = chars.size();
    if (n < 3) throw ValidationError("construct_funceq: N >= 3 required");
    if (tau_params.size() != n - 2)
        throw ValidationError("construct_funceq: need N-2 tau parameters");
    bool tau_nonzero = false;
    for (double t : tau_params) tau_nonzero = tau_nonzero || t != 0.0;
    if (!tau_nonzero) throw ValidationError("construct_funceq: tau parameters must not all vanish");

    std::vector<cplx> omegas;
    for (const auto& chi : chars) omegas.push_back(root_number(chi).omega);
    bool distinct_pair = false;
    for (std::size_t i = 0; i < n && !distinct_pair; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(omegas[i] - omegas[j]) > 1e-9) {
                distinct_pair = true;
                break;
            }
    if (!distinct_pair)
        throw AllRootNumbersEqualError("construct_funceq: all root numbers coincide");

    // reorder so alpha_1 is non-real and omega_2 != omega_1
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<cplx> alphas_all(n);
    for (std::size_t j = 0; j < n; ++j) alphas_all[j] = std::sqrt(omegas[j]);
    std::size_t i0 = n;
    for (std::size_t j = 0; j < n; ++j)
        if (std::abs(alphas_all[j].imag()) > 1e-9) {
            i0 = j;
            break;
        }
    if (i0 == n)
        throw AllRootNumbersEqualError("construct_funceq: no non-real alpha available");
    std::swap(perm[0], perm[i0]);
    std::size_t j0 = 0;
    for (std::size_t j = 1; j < n; ++j)
        if (std::abs(omegas[perm[j]] - omegas[perm[0]]) > 1e-9) {
            j0 = j;
            break;
        }
    if (j0 == 0) throw AllRootNumbersEqualError("construct_funceq: no distinct partner for omega_1");
    std::swap(perm[1], perm[j0]);

    std::vector<DirichletCharacter> ord;
    std::vector<cplx> omega, alpha;
    for (std::size_t j = 0; j < n; ++j) {
        ord.push_back(chars[perm[j]]);
        omega.push_back(omegas[perm[j]]);
        alpha.push_back(alphas_all[perm[j]]);
    }

    std::vector<Series> basis;
    for (const auto& chi : ord) basis.push_back(Series::character(chi));

    // real 2x2 solve helper: coefficients a_j, unknowns x1, x2 with
    // sum_j x_j a_j = 0, x_{j>=3} = tau. Returns the full real vector.
    auto solve_v = [&](const std::vector<cplx>& coeffs) -> std::vector<double> {
        double a11 = coeffs[0].real(), a12 = coeffs[1].real();
        double a21 = coeffs[0].imag(), a22 = coeffs[1].imag();
        double det = a11 * a22 - a12 * a21;
        if (std::abs(det) < 1e-12)
            throw DimensionCollapseError("construct_funceq: leading 2x2 system is singular");
        double r1 = 0.0, r2 = 0.0;
        for (std::size_t j = 2; j < n; ++j) {
            r1 -= tau_params[j - 2] * coeffs[j].real();
            r2 -= tau_params[j - 2] * coeffs[j].imag();
        }
        std::vector<double> v(n);
        v[0] = (r1 * a22 - a12 * r2) / det;
        v[1] = (a11 * r2 - r1 * a21) / det;
        for (std::size_t j = 2; j < n; ++j) v[j] = tau_params[j - 2];
        return v;
    };

    // V_infty from the alpha system; note conj(alpha) and alpha give the same
    // real solution set, so the limit system matches the finite-sigma one.
    std::vector<cplx> conj_alpha(n);
    for (std::size_t j = 0; j < n; ++j) conj_alpha[j] = std::conj(alpha[j]);
    std::vector<double> v_inf = solve_v(conj_alpha);

    std::vector<cplx> c0(n);
    for (std::size_t j = 0; j < n; ++j) c0[j] = conj_alpha[j] * v_inf[j];

    // empirical sigma* of L_{c0} and a clean strip above it
    Series combo0 = combination_series(basis, c0);
    ScanResult wide = min_modulus_scan(combo0, scan);
    double sigma1 = std::max(empirical_sigma_star(wide) + 0.25, scan.sigma_lo);
    double eps_val = 0.0, m_bound = 0.0;
    StripScan ss;
    int attempts = 0;
    for (;; ++attempts) {
        if (attempts > 5 || sigma1 + 1.0 > kBetaCap)
            throw EpsilonZeroError("construct_funceq: no clean strip found for L_{c0}");
        ss = scan_strip(basis, c0, strip_config(scan, sigma1, sigma1 + 1.0));
        if (ss.min_combo > 10.0 * ss.max_tail) break;
        sigma1 += 1.0;
    }
    double sigma2 = sigma1 + 1.0;
    eps_val = ss.min_combo;
    m_bound = ss.max_basis;

    // beta sweep: v_sigma from the conj(alpha_j) F_j(sigma) system
    double target = eps_val / (2.0 * std::sqrt(static_cast<double>(n)) * m_bound);
    double beta = 0.0;
    std::vector<double> v_beta;
    bool found = false;
    for (double b = std::ceil(sigma2 + 1.0); b <= kBetaCap; b += 1.0) {
        BasisValues fv = eval_basis(basis, b);
        std::vector<cplx> coeffs(n);
        for (std::size_t j = 0; j < n; ++j) coeffs[j] = conj_alpha[j] * fv.values[j];
        std::vector<double> vs;
        try {
            vs = solve_v(coeffs);
        } catch (const DimensionCollapseError&) {
            continue;  // retry with larger sigma, as the existence proof does
        }
        double dist = 0.0;
        for (std::size_t j = 0; j < n; ++j) dist += (vs[j] - v_inf[j]) * (vs[j] - v_inf[j]);
        if (std::sqrt(dist) < target) {
            beta = b;
            v_beta = vs;
            found = true;
            break;
        }
    }
    if (!found)
        throw BetaNotFoundError("construct_funceq: no beta <= " + std::to_string(kBetaCap) +
                                " within the vector-distance target");

    FuncEqResult res;
    res.alphas = alpha;
    res.omegas = omega;
    res.v_beta = v_beta;
    res.max_v_imag = 0.0;  // solved over the reals
    double ident = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        ident = std::max(ident, std::abs(conj_alpha[j] * omega[j] - alpha[j]));
    res.funceq_identity_error = ident;

    std::vector<cplx> c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = conj_alpha[j] * v_beta[j];
    res.coefficients.entries = c;
    res.coefficients.basis = basis;
    res.coefficients.provenance = "funceq";
    res.coefficients.betas_used = {beta};

    HoleCertificate& cert = res.certificate;
    cert.scan_params = scan;
    cert.betas = {beta};
    cert.epsilons = {eps_val};
    cert.m_bounds = {m_bound};
    Series final_combo = combination_series(basis, c);
    cert.beta_residuals = {std::abs(evaluate(final_combo, {beta, 0.0}, kEvalEps).value)};
    ScanResult sr = min_modulus_scan(final_combo, strip_config(scan, sigma1, sigma2));
    double delta = std::numeric_limits<double>::infinity();
    for (const auto& r : sr.rows) delta = std::min(delta, r.min_modulus);
    cert.strips = {{sigma1, sigma2, delta}};
    cert.validate();
    return res;
}

double projective_distance(const std::vector<cplx>& c, const std::vector<cplx>& d) {
    if (c.size() != d.size()) throw ValidationError("projective_distance: size mismatch");
    double nc = 0.0, nd = 0.0;
    cplx inner{0.0, 0.0};
    for (std::size_t j = 0; j < c.size(); ++j) {
        nc += std::norm(c[j]);
        nd += std::norm(d[j]);
        inner += c[j] * std::conj(d[j]);
    }
    double cosang = std::abs(inner) / std::sqrt(nc * nd);
    cosang = std::min(cosang, 1.0);
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * cosang));
}

}  // namespace zerostrip
