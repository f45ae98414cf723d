#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zerostrip/characters.hpp"

namespace zerostrip {

enum class SeriesKind {
    Zeta,
    CharacterL,
    LinearCombination,
    Convolution,
    Inverse,
    Explicit,
};

// |a(n)| <= C * d(n)^m; rigorous=false marks an empirically fitted bound
// (general Dirichlet inverses), which forces the warning flag downstream.
struct CoeffBound {
    double C = 1.0;
    int divisor_power = 0;
    bool rigorous = true;
};

// |b_F(p^k)| <= K * p^{k*theta}, theta < 1/2.
struct EulerData {
    double K = 1.0;
    double theta = 0.0;
};

class SeriesImpl;

// Immutable symbolic Dirichlet series with memoized coefficient prefixes.
// Cheap to copy (shared handle); safe for concurrent evaluation once any
// conv/inverse prefixes are warmed.
class Series {
public:
    Series() = default;

    static Series zeta();
    static Series character(const DirichletCharacter& chi);
    static Series linear_combination(std::vector<std::pair<cplx, Series>> terms);
    static Series convolution(const Series& a, const Series& b);
    static Series inverse(const Series& a);
    static Series explicit_coeffs(std::vector<cplx> coeffs);
    static Series conjugate(const Series& s);

    SeriesKind kind() const;
    const CoeffBound& coeff_bound() const;
    const std::optional<EulerData>& euler() const;
    bool has_euler_product() const;
    bool real_coefficients() const;
    std::string describe() const;  // round-trips through the mini-language parser

    // Structural accessors (valid only for the matching kind).
    const DirichletCharacter& character_of() const;
    const std::vector<std::pair<cplx, Series>>& lin_terms() const;
    const Series& conv_lhs() const;
    const Series& conv_rhs() const;
    const Series& inverse_of() const;
    const std::vector<cplx>& explicit_list() const;

    // a(1..N)
    std::vector<cplx> coefficients(std::size_t n_terms) const;
    // a(n0..n0+count-1) into out (1-based n0)
    void fill_coefficients(std::size_t n0, std::size_t count, cplx* out) const;
    cplx coefficient(std::size_t n) const;

    // Warm the memoized prefix (call before sharing across workers).
    void warm(std::size_t n_terms) const;

    const SeriesImpl* impl() const { return impl_.get(); }
    bool valid() const { return impl_ != nullptr; }

private:
    explicit Series(std::shared_ptr<const SeriesImpl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const SeriesImpl> impl_;
};

struct Truncation {
    std::size_t terms = 1;
    double bound = 0.0;    // achieved tail bound at `terms`
    bool capped = false;   // N_max could not reach the requested accuracy
};

struct EvalResult {
    cplx value{0.0, 0.0};
    double tail_bound = 0.0;
    std::size_t terms_used = 1;
    bool warning = false;
};

inline constexpr std::size_t kDefaultTermCap = 10'000'000;

// Smallest N (up to cap) whose closed-form tail bound is <= eps.
// Constant model: C (N^{1-sigma}/(sigma-1) + N^{-sigma}); the divisor-power
// model uses d(n) <= C_delta n^delta with an exactly computed C_delta.
Truncation truncation_length(const Series& s, double sigma, double eps,
                             std::size_t n_max = kDefaultTermCap);
Truncation truncation_length_derivative(const Series& s, double sigma, double eps,
                                        std::size_t n_max = kDefaultTermCap);

// Tail bound of sum_{n>N} |a(n)| n^{-sigma} under the coefficient model.
double tail_bound_at(const Series& s, double sigma, std::size_t n_terms);
double tail_bound_derivative_at(const Series& s, double sigma, std::size_t n_terms);

EvalResult evaluate(const Series& s, cplx point, double eps,
                    std::size_t n_max = kDefaultTermCap);
EvalResult evaluate_derivative(const Series& s, cplx point, double eps,
                               std::size_t n_max = kDefaultTermCap);

// Paper-compatible fixed truncation (e.g. --terms 70000).
EvalResult evaluate_fixed_terms(const Series& s, cplx point, std::size_t n_terms);

// sum_{k<=k_max} b(p^k) p^{-ks}; throws NoEulerProductError for
// linear-combination / explicit kinds.
cplx log_local_factor(const Series& s, uint64_t p, cplx point, int k_max);
// d/ds log F_p(s) = -log p * sum_k k b(p^k) p^{-ks}
cplx log_local_factor_derivative(const Series& s, uint64_t p, cplx point, int k_max);
// b(p^k) values, k = 1..k_max
std::vector<cplx> euler_b_values(const Series& s, uint64_t p, int k_max);

struct OrthogonalityEntry {
    double x;
    cplx partial_sum;
};
struct OrthogonalityReport {
    std::vector<OrthogonalityEntry> entries;
    double fitted_slope = 0.0;  // least squares of Re(partial_sum) vs log log x
};

// sum_{p<=x} a_i(p) conj(a_j(p)) / p
cplx orthogonality_partial_sum(const Series& si, const Series& sj, double x);
OrthogonalityReport orthogonality_report(const Series& si, const Series& sj,
                                         const std::vector<double>& x_grid);

}  // namespace zerostrip
