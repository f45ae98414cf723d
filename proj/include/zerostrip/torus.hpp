#pragma once

#include <functional>
#include <vector>

#include "zerostrip/series.hpp"

namespace zerostrip {

// Trigonometric polynomial sum_m c_m e^{2 pi i <m, theta>} on the n-torus.
struct TrigTerm {
    std::vector<int> freq;
    cplx coeff;
};

struct TrigPolynomial {
    int dimension = 1;
    std::vector<TrigTerm> terms;

    cplx eval(const std::vector<double>& theta) const;
    cplx constant_term() const;
};

// (1/(T2-T1)) integral of H(lambda_1 t, ..., lambda_n t) dt, composite
// trapezoid with the given step. The trig-polynomial overload uses per-term
// rotors with periodic resynthesis.
cplx kw_time_average(const TrigPolynomial& poly, const std::vector<double>& lambdas, double t1,
                     double t2, double quad_step);
cplx kw_time_average(const std::function<cplx(const std::vector<double>&)>& h, int dimension,
                     const std::vector<double>& lambdas, double t1, double t2, double quad_step);

// Torus integral: exact constant coefficient for trig polynomials; tensor
// Gauss-Legendre (64 nodes/axis, Richardson error estimate) otherwise, n <= 4.
cplx torus_integral(const TrigPolynomial& poly);

struct TorusIntegralResult {
    cplx value;
    double error_estimate = 0.0;
};
TorusIntegralResult torus_integral(const std::function<cplx(const std::vector<double>&)>& h,
                                   int dimension);

struct KappaTriple {
    cplx k0, k1, k2;
};

// One-dimensional oscillatory integrals over theta in [0,1]:
//   K0 = int e^{i g(theta)},   K1 = int e^{i g} (F'/F)_j,   K2 = int e^{i g} |(F'/F)_j|^2,
// g(theta) = sum_h Re(conj(y_h) log F_{h,p}(sigma + 2 pi i theta / log p)).
KappaTriple kappa_integrals(const std::vector<Series>& basis, uint64_t p, double sigma,
                            const std::vector<cplx>& y, std::size_t j, double abs_tol = 1e-10);

// Explicit instantiations of the axiom-(II) kappa bounds, with the geometric
// prefactors the derivation actually yields (the constant-free forms fail at
// small p and sigma):
//   |K1| <= ||y|| K_j sqrt(sum K_h^2) log p * w u_j / ((1-w)(1-u_j)^2),
//   |K2| <= K_j^2 log^2 p * u_j^2 / (1-u_j)^4,
// where u_j = p^{-(sigma-theta_j)}, w = p^{-(sigma-max_h theta_h)}.
double kappa1_bound(const std::vector<Series>& basis, uint64_t p, double sigma,
                    const std::vector<cplx>& y, std::size_t j);
double kappa2_bound(const std::vector<Series>& basis, uint64_t p, double sigma, std::size_t j);

struct DecayFitDirection {
    std::vector<cplx> direction;   // unit vector
    uint64_t p = 2;
    bool qualifying = false;       // |sum conj(y_j) b_j(p) / sqrt(m_jj)| >= ||y||
    double fitted_exponent = 0.0;  // slope of log|k0| vs log||y||
    double best_A = 0.0;           // smallest A with |k0| <= A p^{sigma/2} / sqrt(||y||)
    bool flagged = false;          // fitted exponent > -0.4
    std::vector<double> norms;
    std::vector<double> k0_values;
};

struct DecayReport {
    double sigma = 1.0;
    std::vector<DecayFitDirection> fits;
};

// Fits |K0| decay in ||y|| along each direction for each prime; primes are
// marked qualifying per the orthogonality-style selection of the proof.
DecayReport verify_k0_decay(const std::vector<Series>& basis, double sigma,
                            const std::vector<uint64_t>& primes,
                            const std::vector<std::vector<cplx>>& directions,
                            const std::vector<double>& norms);

}  // namespace zerostrip
