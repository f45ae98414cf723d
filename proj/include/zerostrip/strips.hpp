#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zerostrip/characters.hpp"
#include "zerostrip/scanner.hpp"
#include "zerostrip/series.hpp"

namespace zerostrip {

struct CoefficientVector {
    std::vector<cplx> entries;
    std::vector<Series> basis;
    std::string provenance;  // one_hole | k_holes | funceq | paper_closed_form
    std::vector<double> betas_used;

    Series combination() const;
};

struct CertifiedStrip {
    double sigma_lo = 0.0, sigma_hi = 0.0;
    double delta = 0.0;  // scanned lower bound of |L_c| on the strip
};

struct HoleCertificate {
    std::vector<double> betas;                // constructed zero locations
    std::vector<double> beta_residuals;       // |L_c(beta_l)|
    std::vector<CertifiedStrip> strips;       // scan-supported, never "proved"
    std::vector<double> epsilons;             // construction eps per stage
    std::vector<double> m_bounds;             // construction M per stage
    ScanConfig scan_params;
    bool scan_supported = true;

    void validate() const;  // monotone betas, strips below their betas, delta > 0
};

// Solution basis vector of the stacked hyperplane systems of the inductive
// construction. level h means L_v vanishes at sigmas[0..h-1] (infinities mark
// the limit rows replaced by leading-coefficient constraints).
struct BasisVector {
    int level = 1;
    std::vector<double> sigmas;  // finite entries; may be shorter than level
    std::vector<cplx> entries;
};

// det of the a_j(1..N) matrix; construction requires |det| > 1e-12.
cplx check_det_condition(const std::vector<Series>& basis);

// v_j^(1)(sigma) = (-1/F_1(sigma), 0, ..., 1/F_j(sigma), ..., 0), j = 2..N.
std::vector<BasisVector> hyperplane_basis(const std::vector<Series>& basis, double sigma,
                                          double eps = 1e-10);

// v_j^(h) = v_j^(h-1) - (L_{v_j}(sigma_h)/L_{v_h}(sigma_h)) v_h^(h-1).
std::vector<BasisVector> inductive_step(const std::vector<Series>& basis,
                                        const std::vector<BasisVector>& level_vectors,
                                        double sigma_h, double eps = 1e-10);

// Generator of the null space of the (N-1) x N system with rows
// F(sigma_l), l < m, then a(n)-rows for n = 1..N-m. Normalized so the last
// nonzero entry is 1.
BasisVector limit_vector(const std::vector<Series>& basis,
                         const std::vector<double>& finite_sigmas);

struct ConstructResult {
    CoefficientVector coefficients;
    HoleCertificate certificate;
};

ConstructResult construct_one_hole(const std::vector<Series>& basis, const ScanConfig& scan);

ConstructResult construct_k_holes(const std::vector<Series>& basis, const ScanConfig& scan,
                                  const std::vector<double>& forced_betas = {});

// The three closed forms of the concrete mod-5 example, evaluated with the
// paper-compatible 70000-term truncation.
CoefficientVector paper_closed_form_coefficients(std::size_t terms = 70000);

struct FuncEqResult {
    CoefficientVector coefficients;
    HoleCertificate certificate;
    std::vector<cplx> alphas;        // alpha_j = principal sqrt(omega_j)
    std::vector<cplx> omegas;
    std::vector<double> v_beta;      // the real solution vector at beta
    double max_v_imag = 0.0;         // realness check artifact (exact 0 here)
    double funceq_identity_error = 0.0;  // max_j |conj(a_j) w_j - a_j|
};

// Functional-equation-preserving construction on primitive characters.
FuncEqResult construct_funceq(const std::vector<DirichletCharacter>& chars,
                              const std::vector<double>& tau_params, const ScanConfig& scan);

// Projective distance min_phi || c/|c| - e^{i phi} d/|d| ||.
double projective_distance(const std::vector<cplx>& c, const std::vector<cplx>& d);

}  // namespace zerostrip
