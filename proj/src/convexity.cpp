#include "zerostrip/convexity.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "zerostrip/errors.hpp"

namespace zerostrip {

namespace {

constexpr int kSignGrid = 10'000;

// Smallest sign-change bracket of f on (0,1), scanning the endpoints too:
// for large K the root sits below the first interior grid point.
std::pair<double, double> smallest_bracket(const std::function<double(double)>& f) {
    double prev_x = 0.0;
    double prev_v = f(0.0);
    for (int i = 1; i <= kSignGrid; ++i) {
        double x = static_cast<double>(i) / kSignGrid;
        double v = f(x);
        if (v == 0.0) return {x, x};
        if (prev_v == 0.0) return {prev_x, prev_x};
        if ((prev_v < 0.0) != (v < 0.0)) return {prev_x, x};
        prev_x = x;
        prev_v = v;
    }
    throw NumericalError("radius root scan: no sign change in (0,1)");
}

RadiusResult solve_radius(const std::function<double(double)>& f,
                          const std::function<double(double)>& df, std::optional<double> K) {
    auto [a, b] = smallest_bracket(f);
    double fa = f(a);
    // bisection to width 1e-12
    while (b - a > 1e-12) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if (fm == 0.0) {
            a = b = m;
            break;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    double x = 0.5 * (a + b);
    for (int i = 0; i < 3; ++i) {
        double d = df(x);
        if (d == 0.0) break;
        x -= f(x) / d;
    }
    // final verified bracket around the polished root
    double half = 5e-15;
    double lo = x - half, hi = x + half;
    int widen = 0;
    while ((f(lo) < 0.0) == (f(hi) < 0.0) && widen < 8) {
        half *= 2.0;
        lo = x - half;
        hi = x + half;
        ++widen;
    }

    RadiusResult r;
    r.radius = x;
    r.K = K;
    r.residual = std::abs(f(x));
    r.bracket_width = hi - lo;
    return r;
}

double bisect_only(const std::function<double(double)>& f) {
    auto [a, b] = smallest_bracket(f);
    double fa = f(a);
    for (int i = 0; i < 120 && b - a > 0.0; ++i) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

RadiusResult radius_R1() {
    auto f = [](double x) { return 2.0 * std::pow(1.0 - x, 4) - (1.0 + 4.0 * x + x * x); };
    auto df = [](double x) { return -8.0 * std::pow(1.0 - x, 3) - (4.0 + 2.0 * x); };
    return solve_radius(f, df, std::nullopt);
}

RadiusResult radius_R2(double K) {
    if (!(K > 0.0)) throw ValidationError("radius_R2: K > 0 required");
    auto f = [K](double x) {
        return x * x * x - 3.0 * x * x + 4.0 * x - std::pow(1.0 - x, 3) / K;
    };
    auto df = [K](double x) {
        return 3.0 * x * x - 6.0 * x + 4.0 + 3.0 * std::pow(1.0 - x, 2) / K;
    };
    return solve_radius(f, df, K);
}

RadiusResult radius_R3(double K) {
    if (!(K > 0.0)) throw ValidationError("radius_R3: K > 0 required");
    auto f = [K](double x) {
        double x2 = x * x;
        return x2 * x2 * x - 5.0 * x2 * x2 + 11.0 * x2 * x + x2 + 16.0 * x -
               std::pow(1.0 - x, 5) / K;
    };
    auto df = [K](double x) {
        double x2 = x * x;
        return 5.0 * x2 * x2 - 20.0 * x2 * x + 33.0 * x2 + 2.0 * x + 16.0 +
               5.0 * std::pow(1.0 - x, 4) / K;
    };
    return solve_radius(f, df, K);
}

double bisection_oracle_R1() {
    return bisect_only([](double x) { return 2.0 * std::pow(1.0 - x, 4) - (1.0 + 4.0 * x + x * x); });
}

double bisection_oracle_R2(double K) {
    return bisect_only(
        [K](double x) { return x * x * x - 3.0 * x * x + 4.0 * x - std::pow(1.0 - x, 3) / K; });
}

double bisection_oracle_R3(double K) {
    return bisect_only([K](double x) {
        double x2 = x * x;
        return x2 * x2 * x - 5.0 * x2 * x2 + 11.0 * x2 * x + x2 + 16.0 * x -
               std::pow(1.0 - x, 5) / K;
    });
}

ARCheck check_alexander_remak(const std::vector<double>& coeff_bounds_from_2,
                              const GeometricTail& tail, double r) {
    if (!(r > 0.0)) throw ValidationError("check_alexander_remak: r > 0 required");
    double sum = 0.0;
    std::size_t n = 2;
    for (double bn : coeff_bounds_from_2) {
        sum += static_cast<double>(n) * static_cast<double>(n) * bn *
               std::pow(r, static_cast<double>(n) - 1.0);
        ++n;
    }
    if (tail.B > 0.0) {
        double q = tail.rho * r;
        if (q >= 1.0)
            throw DivergentTailError("check_alexander_remak: geometric tail ratio * r >= 1");
        // sum_{m > N} m^2 B rho^m r^{m-1} = (B/r) [ S2(q) - partial ]
        // with S2(q) = sum_{m>=1} m^2 q^m = q(1+q)/(1-q)^3
        double full = q * (1.0 + q) / std::pow(1.0 - q, 3);
        double partial = 0.0;
        for (std::size_t m = 1; m < n; ++m)
            partial += static_cast<double>(m) * static_cast<double>(m) * std::pow(q, static_cast<double>(m));
        sum += tail.B / r * (full - partial);
    }
    ARCheck c;
    c.sum = sum;
    c.margin = 1.0 - sum;
    c.convex = sum <= 1.0;
    return c;
}

bool curve_convexity_check(const std::vector<std::complex<double>>& coeffs, double r,
                           int samples) {
    if (samples < 8) throw ValidationError("curve_convexity_check: need >= 8 samples");
    using cd = std::complex<double>;
    int sign = 0;
    for (int k = 0; k < samples; ++k) {
        double theta = static_cast<double>(k) / samples;
        // termwise-differentiated series of gamma(theta) = f(r e^{2 pi i theta})
        cd d1{0.0, 0.0}, d2{0.0, 0.0};
        for (std::size_t n = 1; n <= coeffs.size(); ++n) {
            double ang = 2.0 * std::numbers::pi * static_cast<double>(n) * theta;
            cd zn = coeffs[n - 1] * std::pow(r, static_cast<double>(n)) *
                    cd{std::cos(ang), std::sin(ang)};
            cd iw{0.0, 2.0 * std::numbers::pi * static_cast<double>(n)};
            d1 += zn * iw;
            d2 += zn * iw * iw;
        }
        double mod = std::abs(d1);
        if (mod < 1e-12)
            throw DerivativeVanishesError("curve_convexity_check: |f'| < 1e-12 at a sample");
        double curv = (std::conj(d1) * d2).imag() / (mod * mod * mod);
        int s = curv > 0.0 ? 1 : (curv < 0.0 ? -1 : 0);
        if (s == 0) return false;
        if (sign == 0) sign = s;
        if (s != sign) return false;
    }
    return true;
}

}  // namespace zerostrip
