#include "zerostrip/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "zerostrip/errors.hpp"
#include "zerostrip/primes.hpp"

namespace zerostrip {

namespace {
// Memoize coefficient prefixes up to this length; beyond it the streamable
// kinds regenerate blocks on the fly. Convolutions and inverses always keep
// their full prefix since recomputing them is quadratic-ish.
constexpr std::size_t kPrefixCacheMax = std::size_t{1} << 21;
}  // namespace

class SeriesImpl {
public:
    SeriesKind kind;
    DirichletCharacter chi;                          // CharacterL
    std::vector<std::pair<cplx, Series>> terms;      // LinearCombination
    Series child_a, child_b;                         // Convolution / Inverse
    std::vector<cplx> explicit_list;                 // Explicit
    CoeffBound bound;
    std::optional<EulerData> euler;
    bool real_coeffs = false;

    mutable std::mutex cache_mutex;
    mutable std::vector<cplx> prefix;  // a(1..prefix.size())

    bool streamable() const {
        switch (kind) {
            case SeriesKind::Zeta:
            case SeriesKind::CharacterL:
            case SeriesKind::Explicit:
                return true;
            case SeriesKind::LinearCombination:
                for (const auto& [c, s] : terms)
                    if (!s.impl()->streamable()) return false;
                return true;
            default:
                return false;
        }
    }

    // Direct block generation, no cache involvement. 1-based n0.
    void generate_block(std::size_t n0, std::size_t count, cplx* out) const {
        switch (kind) {
            case SeriesKind::Zeta:
                std::fill(out, out + count, cplx{1.0, 0.0});
                return;
            case SeriesKind::CharacterL: {
                const uint64_t q = chi.modulus();
                std::vector<cplx> table(q == 0 ? 1 : q);
                for (uint64_t r = 0; r < std::max<uint64_t>(q, 1); ++r)
                    table[r] = chi.value(static_cast<int64_t>(r));
                for (std::size_t i = 0; i < count; ++i)
                    out[i] = q ? table[(n0 + i) % q] : cplx{1.0, 0.0};
                return;
            }
            case SeriesKind::Explicit:
                for (std::size_t i = 0; i < count; ++i) {
                    std::size_t n = n0 + i;
                    out[i] = n <= explicit_list.size() ? explicit_list[n - 1] : cplx{0.0, 0.0};
                }
                return;
            case SeriesKind::LinearCombination: {
                std::fill(out, out + count, cplx{0.0, 0.0});
                std::vector<cplx> tmp(count);
                for (const auto& [c, s] : terms) {
                    s.fill_coefficients(n0, count, tmp.data());
                    for (std::size_t i = 0; i < count; ++i) out[i] += c * tmp[i];
                }
                return;
            }
            case SeriesKind::Convolution:
            case SeriesKind::Inverse:
                throw NumericalError("generate_block on non-streamable series");
        }
    }

    void ensure_prefix(std::size_t n_terms) const {
        std::lock_guard<std::mutex> lock(cache_mutex);
        if (prefix.size() >= n_terms) return;
        switch (kind) {
            case SeriesKind::Convolution: {
                auto a = child_a.coefficients(n_terms);
                auto b = child_b.coefficients(n_terms);
                std::vector<cplx> c(n_terms, cplx{0.0, 0.0});
                for (std::size_t d = 1; d <= n_terms; ++d) {
                    if (a[d - 1] == cplx{0.0, 0.0}) continue;
                    for (std::size_t m = 1; d * m <= n_terms; ++m)
                        c[d * m - 1] += a[d - 1] * b[m - 1];
                }
                prefix = std::move(c);
                return;
            }
            case SeriesKind::Inverse: {
                auto a = child_a.coefficients(n_terms);
                if (std::abs(a[0]) == 0.0)
                    throw NonInvertibleError("Dirichlet inverse requires a(1) != 0");
                // inv(n) = -(1/a(1)) sum_{d|n, d<n} inv(d) a(n/d), accumulated
                // in sieve order so each inv(d) scatters to its multiples once.
                std::vector<cplx> inv(n_terms, cplx{0.0, 0.0});
                std::vector<cplx> acc(n_terms, cplx{0.0, 0.0});
                inv[0] = 1.0 / a[0];
                for (std::size_t n = 1; n <= n_terms; ++n) {
                    if (n > 1) inv[n - 1] = -acc[n - 1] / a[0];
                    if (inv[n - 1] == cplx{0.0, 0.0}) continue;
                    for (std::size_t m = 2; n * m <= n_terms; ++m)
                        acc[n * m - 1] += inv[n - 1] * a[m - 1];
                }
                prefix = std::move(inv);
                return;
            }
            default: {
                std::size_t want = std::min(std::max(n_terms, prefix.size() * 2),
                                            std::max(n_terms, kPrefixCacheMax));
                std::vector<cplx> p(want);
                generate_block(1, want, p.data());
                prefix = std::move(p);
                return;
            }
        }
    }
};

namespace {

std::shared_ptr<SeriesImpl> make_impl(SeriesKind k) {
    auto impl = std::make_shared<SeriesImpl>();
    impl->kind = k;
    return impl;
}

}  // namespace

Series Series::zeta() {
    auto impl = make_impl(SeriesKind::Zeta);
    impl->bound = {1.0, 0, true};
    impl->euler = EulerData{1.0, 0.0};
    impl->real_coeffs = true;
    return Series(impl);
}

Series Series::character(const DirichletCharacter& chi) {
    auto impl = make_impl(SeriesKind::CharacterL);
    impl->chi = chi;
    impl->bound = {1.0, 0, true};
    impl->euler = EulerData{1.0, 0.0};
    impl->real_coeffs = (chi.order() <= 2);
    return Series(impl);
}

Series Series::linear_combination(std::vector<std::pair<cplx, Series>> terms) {
    if (terms.empty()) throw ValidationError("linear combination needs at least one term");
    auto impl = make_impl(SeriesKind::LinearCombination);
    double C = 0.0;
    int m = 0;
    bool rig = true, real = true;
    for (const auto& [c, s] : terms) {
        const auto& b = s.coeff_bound();
        C += std::abs(c) * b.C;
        m = std::max(m, b.divisor_power);
        rig = rig && b.rigorous;
        real = real && s.real_coefficients() && c.imag() == 0.0;
    }
    impl->terms = std::move(terms);
    impl->bound = {C, m, rig};
    impl->euler = std::nullopt;
    impl->real_coeffs = real;
    return Series(impl);
}

Series Series::convolution(const Series& a, const Series& b) {
    auto impl = make_impl(SeriesKind::Convolution);
    impl->child_a = a;
    impl->child_b = b;
    const auto& ba = a.coeff_bound();
    const auto& bb = b.coeff_bound();
    // |(a*b)(n)| <= C_a C_b sum_{d|n} d(d)^ma d(n/d)^mb <= C_a C_b d(n)^{ma+mb+1}
    impl->bound = {ba.C * bb.C, ba.divisor_power + bb.divisor_power + 1,
                   ba.rigorous && bb.rigorous};
    if (a.euler() && b.euler())
        impl->euler = EulerData{a.euler()->K + b.euler()->K,
                                std::max(a.euler()->theta, b.euler()->theta)};
    impl->real_coeffs = a.real_coefficients() && b.real_coefficients();
    return Series(impl);
}

Series Series::inverse(const Series& a) {
    auto impl = make_impl(SeriesKind::Inverse);
    impl->child_a = a;
    if (a.kind() == SeriesKind::Zeta || a.kind() == SeriesKind::CharacterL) {
        // inverse coefficients are mu(n) a(n): still bounded by 1
        impl->bound = {1.0, 0, true};
    } else {
        // probe-fitted bound; marked non-rigorous so warnings propagate
        impl->bound = {1.0, 0, false};
        auto probe = Series(impl).coefficients(2048);
        double mx = 0.0;
        for (auto& v : probe) mx = std::max(mx, std::abs(v));
        impl->bound.C = std::max(1.0, mx);
    }
    if (a.euler()) impl->euler = *a.euler();  // b -> -b keeps |b| bounds
    impl->real_coeffs = a.real_coefficients();
    return Series(impl);
}

Series Series::explicit_coeffs(std::vector<cplx> coeffs) {
    if (coeffs.empty()) throw ValidationError("explicit series needs at least one coefficient");
    auto impl = make_impl(SeriesKind::Explicit);
    double C = 0.0;
    bool real = true;
    for (auto& v : coeffs) {
        C = std::max(C, std::abs(v));
        real = real && v.imag() == 0.0;
    }
    impl->explicit_list = std::move(coeffs);
    impl->bound = {C, 0, true};
    impl->real_coeffs = real;
    return Series(impl);
}

Series Series::conjugate(const Series& s) {
    switch (s.kind()) {
        case SeriesKind::Zeta:
            return s;
        case SeriesKind::CharacterL:
            return character(s.impl()->chi.conjugate());
        case SeriesKind::LinearCombination: {
            std::vector<std::pair<cplx, Series>> t;
            for (const auto& [c, x] : s.impl()->terms) t.emplace_back(std::conj(c), conjugate(x));
            return linear_combination(std::move(t));
        }
        case SeriesKind::Convolution:
            return convolution(conjugate(s.impl()->child_a), conjugate(s.impl()->child_b));
        case SeriesKind::Inverse:
            return inverse(conjugate(s.impl()->child_a));
        case SeriesKind::Explicit: {
            auto v = s.impl()->explicit_list;
            for (auto& x : v) x = std::conj(x);
            return explicit_coeffs(std::move(v));
        }
    }
    throw ValidationError("conjugate: unknown series kind");
}

SeriesKind Series::kind() const { return impl_->kind; }
const CoeffBound& Series::coeff_bound() const { return impl_->bound; }
const std::optional<EulerData>& Series::euler() const { return impl_->euler; }
bool Series::has_euler_product() const { return impl_->euler.has_value(); }
bool Series::real_coefficients() const { return impl_->real_coeffs; }
const DirichletCharacter& Series::character_of() const { return impl_->chi; }
const std::vector<std::pair<cplx, Series>>& Series::lin_terms() const { return impl_->terms; }
const Series& Series::conv_lhs() const { return impl_->child_a; }
const Series& Series::conv_rhs() const { return impl_->child_b; }
const Series& Series::inverse_of() const { return impl_->child_a; }
const std::vector<cplx>& Series::explicit_list() const { return impl_->explicit_list; }

std::vector<cplx> Series::coefficients(std::size_t n_terms) const {
    if (n_terms < 1) throw ValidationError("coefficients: N >= 1 required");
    std::vector<cplx> out(n_terms);
    fill_coefficients(1, n_terms, out.data());
    return out;
}

void Series::fill_coefficients(std::size_t n0, std::size_t count, cplx* out) const {
    const SeriesImpl* im = impl_.get();
    std::size_t end = n0 + count - 1;
    if (!im->streamable() || end <= kPrefixCacheMax) {
        im->ensure_prefix(std::max(end, std::size_t{1}));
        std::lock_guard<std::mutex> lock(im->cache_mutex);
        for (std::size_t i = 0; i < count; ++i) out[i] = im->prefix[n0 + i - 1];
        return;
    }
    im->generate_block(n0, count, out);
}

cplx Series::coefficient(std::size_t n) const {
    cplx v;
    fill_coefficients(n, 1, &v);
    return v;
}

void Series::warm(std::size_t n_terms) const {
    impl_->ensure_prefix(std::min(n_terms, impl_->streamable() ? kPrefixCacheMax : n_terms));
}

std::string Series::describe() const {
    std::ostringstream os;
    switch (kind()) {
        case SeriesKind::Zeta:
            os << "zeta";
            break;
        case SeriesKind::CharacterL: {
            const auto& chi = impl_->chi;
            os << "L(mod=" << chi.modulus();
            const auto& exps = chi.crt_exponents();
            os << ",index=";
            // canonical index = position in lexicographic tuple enumeration
            auto group = UnitGroup::get(chi.modulus());
            uint64_t idx = 0;
            for (std::size_t i = 0; i < exps.size(); ++i)
                idx = idx * group->factors[i].order + exps[i] % group->factors[i].order;
            os << idx << ")";
            break;
        }
        case SeriesKind::LinearCombination: {
            os << "lin(";
            bool fst = true;
            for (const auto& [c, s] : impl_->terms) {
                if (!fst) os << " + ";
                fst = false;
                os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)*"
                   << s.describe();
            }
            os << ")";
            break;
        }
        case SeriesKind::Convolution:
            os << "conv(" << impl_->child_a.describe() << "," << impl_->child_b.describe() << ")";
            break;
        case SeriesKind::Inverse:
            os << "inv(" << impl_->child_a.describe() << ")";
            break;
        case SeriesKind::Explicit: {
            os << "explicit(";
            for (std::size_t i = 0; i < impl_->explicit_list.size(); ++i) {
                const auto& v = impl_->explicit_list[i];
                if (i) os << ",";
                os << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
            }
            os << ")";
            break;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Tail bounds and truncation
// ---------------------------------------------------------------------------

namespace {

// Exact maximum of d(n)/n^delta over all n >= 1: a finite product over
// primes p < 2^{1/delta} of max_k (k+1) p^{-k delta}.
double divisor_envelope_constant(double delta) {
    static std::mutex mx;
    static std::map<double, double> memo;
    std::lock_guard<std::mutex> lock(mx);
    auto it = memo.find(delta);
    if (it != memo.end()) return it->second;

    double limit = std::pow(2.0, 1.0 / delta);
    auto psp = PrimeSieve::primes(static_cast<uint64_t>(limit) + 1);
    const auto& ps = *psp;
    double c = 1.0;
    for (uint64_t p : ps) {
        if (static_cast<double>(p) >= limit) break;
        double best = 1.0;
        double ld = delta * std::log(static_cast<double>(p));
        for (int k = 1; k < 4 + static_cast<int>(10.0 / std::max(ld, 1e-9)); ++k) {
            best = std::max(best, (k + 1) * std::exp(-ld * k));
        }
        c *= best;
    }
    memo[delta] = c;
    return c;
}

constexpr double kMinDelta = 0.05;  // keeps the envelope product computable

struct TailModel {
    double C;        // effective constant
    double shift;    // effective exponent shift (m*delta for divisor models)
    bool usable;     // false when the tail is not summable under the model
};

TailModel tail_model_for(const CoeffBound& b, double sigma) {
    if (b.divisor_power == 0) return {b.C, 0.0, true};
    double delta = std::min(0.5, (sigma - 1.0) / (2.0 * b.divisor_power));
    if (delta < kMinDelta) {
        delta = kMinDelta;
        if (sigma - 1.0 <= b.divisor_power * delta) return {b.C, 0.0, false};
    }
    double cd = divisor_envelope_constant(delta);
    return {b.C * std::pow(cd, b.divisor_power), b.divisor_power * delta, true};
}

double constant_tail(double C, double sigma, double n) {
    // C * (N^{1-sigma}/(sigma-1) + N^{-sigma})
    return C * (std::pow(n, 1.0 - sigma) / (sigma - 1.0) + std::pow(n, -sigma));
}

double constant_tail_deriv(double C, double sigma, double n) {
    // integral_N^inf x^{-sigma} log x dx = N^{1-sigma}((sigma-1)logN + 1)/(sigma-1)^2
    double ln = std::log(n);
    return C * (std::pow(n, 1.0 - sigma) * ((sigma - 1.0) * ln + 1.0) /
                    ((sigma - 1.0) * (sigma - 1.0)) +
                std::pow(n, -sigma) * ln);
}

Truncation solve_truncation(const Series& s, double sigma, double eps, std::size_t n_max,
                            bool derivative) {
    if (!(sigma >= 1.01))
        throw DomainError("truncation_length: sigma >= 1.01 required (got " +
                          std::to_string(sigma) + ")");
    if (!(eps > 0)) throw ValidationError("truncation_length: eps > 0 required");

    const auto& b = s.coeff_bound();
    if (s.kind() == SeriesKind::Explicit) {
        std::size_t n = std::min(s.impl()->explicit_list.size(), n_max);
        return {std::max<std::size_t>(n, 1), 0.0, false};
    }

    TailModel tm = tail_model_for(b, sigma);
    auto bound_at = [&](std::size_t n) -> double {
        if (!tm.usable) return std::numeric_limits<double>::infinity();
        double se = sigma - tm.shift;
        double nn = static_cast<double>(n);
        return derivative ? constant_tail_deriv(tm.C, se, nn) : constant_tail(tm.C, se, nn);
    };

    if (bound_at(n_max) > eps) {
        Truncation t{n_max, bound_at(n_max), true};
        return t;
    }
    // binary search for the smallest admissible N
    std::size_t lo = 1, hi = n_max;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (bound_at(mid) <= eps)
            hi = mid;
        else
            lo = mid + 1;
    }
    return {lo, bound_at(lo), false};
}

}  // namespace

Truncation truncation_length(const Series& s, double sigma, double eps, std::size_t n_max) {
    return solve_truncation(s, sigma, eps, n_max, false);
}

Truncation truncation_length_derivative(const Series& s, double sigma, double eps,
                                        std::size_t n_max) {
    return solve_truncation(s, sigma, eps, n_max, true);
}

double tail_bound_at(const Series& s, double sigma, std::size_t n_terms) {
    if (s.kind() == SeriesKind::Explicit && n_terms >= s.impl()->explicit_list.size()) return 0.0;
    TailModel tm = tail_model_for(s.coeff_bound(), sigma);
    if (!tm.usable) return std::numeric_limits<double>::infinity();
    return constant_tail(tm.C, sigma - tm.shift, static_cast<double>(n_terms));
}

double tail_bound_derivative_at(const Series& s, double sigma, std::size_t n_terms) {
    if (s.kind() == SeriesKind::Explicit && n_terms >= s.impl()->explicit_list.size()) return 0.0;
    TailModel tm = tail_model_for(s.coeff_bound(), sigma);
    if (!tm.usable) return std::numeric_limits<double>::infinity();
    return constant_tail_deriv(tm.C, sigma - tm.shift, static_cast<double>(n_terms));
}

// ---------------------------------------------------------------------------
// Point evaluation (compensated summation)
// ---------------------------------------------------------------------------

namespace {

struct KahanAcc {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

EvalResult sum_series(const Series& s, cplx point, std::size_t n_terms, double tail,
                      bool warning, bool log_weight) {
    KahanAcc re, im;
    constexpr std::size_t kBlock = 1 << 15;
    std::vector<cplx> buf(std::min(n_terms, kBlock));
    const double sigma = point.real(), t = point.imag();
    for (std::size_t n0 = 1; n0 <= n_terms; n0 += kBlock) {
        std::size_t cnt = std::min(kBlock, n_terms - n0 + 1);
        s.fill_coefficients(n0, cnt, buf.data());
        for (std::size_t i = 0; i < cnt; ++i) {
            if (buf[i] == cplx{0.0, 0.0}) continue;
            double n = static_cast<double>(n0 + i);
            double ln = std::log(n);
            double mag = std::exp(-sigma * ln);
            double ang = -t * ln;
            cplx term = buf[i] * cplx{mag * std::cos(ang), mag * std::sin(ang)};
            if (log_weight) term *= -ln;
            re.add(term.real());
            im.add(term.imag());
        }
    }
    EvalResult r;
    r.value = {re.sum, im.sum};
    r.tail_bound = tail;
    r.terms_used = n_terms;
    r.warning = warning;
    return r;
}

}  // namespace

EvalResult evaluate(const Series& s, cplx point, double eps, std::size_t n_max) {
    if (!(point.real() >= 1.01)) throw DomainError("evaluate: Re(s) >= 1.01 required");
    Truncation tr = solve_truncation(s, point.real(), eps, n_max, false);
    bool warn = tr.capped || !s.coeff_bound().rigorous;
    return sum_series(s, point, tr.terms, tr.bound, warn, false);
}

EvalResult evaluate_derivative(const Series& s, cplx point, double eps, std::size_t n_max) {
    if (!(point.real() >= 1.01)) throw DomainError("evaluate_derivative: Re(s) >= 1.01 required");
    Truncation tr = solve_truncation(s, point.real(), eps, n_max, true);
    bool warn = tr.capped || !s.coeff_bound().rigorous;
    return sum_series(s, point, tr.terms, tr.bound, warn, true);
}

EvalResult evaluate_fixed_terms(const Series& s, cplx point, std::size_t n_terms) {
    if (!(point.real() >= 1.01)) throw DomainError("evaluate: Re(s) >= 1.01 required");
    if (n_terms < 1) throw ValidationError("evaluate_fixed_terms: N >= 1 required");
    double tail = tail_bound_at(s, point.real(), n_terms);
    return sum_series(s, point, n_terms, tail, !s.coeff_bound().rigorous, false);
}

// ---------------------------------------------------------------------------
// Euler local factors
// ---------------------------------------------------------------------------

std::vector<cplx> euler_b_values(const Series& s, uint64_t p, int k_max) {
    if (!is_prime_u64(p)) throw ValidationError("log_local_factor: p must be prime");
    if (k_max < 1) throw ValidationError("log_local_factor: k_max >= 1 required");
    switch (s.kind()) {
        case SeriesKind::Zeta: {
            std::vector<cplx> b(static_cast<std::size_t>(k_max));
            for (int k = 1; k <= k_max; ++k) b[k - 1] = cplx{1.0 / k, 0.0};
            return b;
        }
        case SeriesKind::CharacterL: {
            std::vector<cplx> b(static_cast<std::size_t>(k_max));
            cplx cp = s.impl()->chi.value(static_cast<int64_t>(p));
            cplx pw = cp;
            for (int k = 1; k <= k_max; ++k) {
                b[k - 1] = pw / static_cast<double>(k);
                pw *= cp;
            }
            return b;
        }
        case SeriesKind::Convolution: {
            auto ba = euler_b_values(s.impl()->child_a, p, k_max);
            auto bb = euler_b_values(s.impl()->child_b, p, k_max);
            for (int k = 0; k < k_max; ++k) ba[k] += bb[k];
            return ba;
        }
        case SeriesKind::Inverse: {
            auto b = euler_b_values(s.impl()->child_a, p, k_max);
            for (auto& v : b) v = -v;
            return b;
        }
        default:
            throw NoEulerProductError("series kind has no Euler product");
    }
}

cplx log_local_factor(const Series& s, uint64_t p, cplx point, int k_max) {
    if (!(point.real() >= 1.0)) throw DomainError("log_local_factor: Re(s) >= 1 required");
    auto b = euler_b_values(s, p, k_max);
    cplx x = std::exp(-point * std::log(static_cast<double>(p)));
    cplx xp = x, sum{0.0, 0.0};
    for (int k = 1; k <= k_max; ++k) {
        sum += b[k - 1] * xp;
        xp *= x;
    }
    return sum;
}

cplx log_local_factor_derivative(const Series& s, uint64_t p, cplx point, int k_max) {
    if (!(point.real() >= 1.0)) throw DomainError("log_local_factor: Re(s) >= 1 required");
    auto b = euler_b_values(s, p, k_max);
    double lp = std::log(static_cast<double>(p));
    cplx x = std::exp(-point * lp);
    cplx xp = x, sum{0.0, 0.0};
    for (int k = 1; k <= k_max; ++k) {
        sum += static_cast<double>(k) * b[k - 1] * xp;
        xp *= x;
    }
    return -lp * sum;
}

// ---------------------------------------------------------------------------
// Orthogonality diagnostics
// ---------------------------------------------------------------------------

cplx orthogonality_partial_sum(const Series& si, const Series& sj, double x) {
    if (!(x >= 2.0)) throw ValidationError("orthogonality_partial_sum: x >= 2 required");
    auto psp = PrimeSieve::primes(static_cast<uint64_t>(x));
    const auto& ps = *psp;
    cplx sum{0.0, 0.0};
    for (uint64_t p : ps) {
        if (static_cast<double>(p) > x) break;
        cplx ai = si.coefficient(p);
        cplx aj = sj.coefficient(p);
        sum += ai * std::conj(aj) / static_cast<double>(p);
    }
    return sum;
}

OrthogonalityReport orthogonality_report(const Series& si, const Series& sj,
                                         const std::vector<double>& x_grid) {
    for (std::size_t i = 1; i < x_grid.size(); ++i)
        if (!(x_grid[i] > x_grid[i - 1]))
            throw ValidationError("orthogonality_report: x_grid must be strictly increasing");
    OrthogonalityReport rep;
    double max_x = x_grid.empty() ? 2.0 : x_grid.back();
    auto psp = PrimeSieve::primes(static_cast<uint64_t>(max_x));
    const auto& ps = *psp;
    cplx run{0.0, 0.0};
    std::size_t pi = 0;
    for (double x : x_grid) {
        while (pi < ps.size() && static_cast<double>(ps[pi]) <= x) {
            uint64_t p = ps[pi];
            run += si.coefficient(p) * std::conj(sj.coefficient(p)) / static_cast<double>(p);
            ++pi;
        }
        rep.entries.push_back({x, run});
    }
    // least squares slope of Re(S(x)) against log log x
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = rep.entries.size();
    for (const auto& e : rep.entries) {
        double u = std::log(std::log(e.x));
        double v = e.partial_sum.real();
        sx += u;
        sy += v;
        sxx += u * u;
        sxy += u * v;
    }
    double denom = n * sxx - sx * sx;
    rep.fitted_slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    return rep;
}

}  // namespace zerostrip
