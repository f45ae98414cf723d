#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace zerostrip {

struct RadiusResult {
    double radius = 0.0;
    std::optional<double> K;
    double residual = 0.0;       // |polynomial value| at the root
    double bracket_width = 0.0;  // final verified sign-change bracket
};

// Smallest real root in (0,1) of 2(1-X)^4 = 1 + 4X + X^2.
RadiusResult radius_R1();
// Smallest real root in (0,1) of X^3 - 3X^2 + 4X = (1-X)^3 / K.
RadiusResult radius_R2(double K);
// Smallest real root in (0,1) of X^5 - 5X^4 + 11X^3 + X^2 + 16X = (1-X)^5 / K.
RadiusResult radius_R3(double K);

// Pure bisection on a dense sign grid; the independent oracle route for the
// acceptance checks (no Newton polish).
double bisection_oracle_R1();
double bisection_oracle_R2(double K);
double bisection_oracle_R3(double K);

struct ARCheck {
    bool convex = false;
    double sum = 0.0;     // sum n^2 |b(n)| r^{n-1} + tail
    double margin = 0.0;  // 1 - sum
};

struct GeometricTail {
    double B = 0.0;    // |b(n)| <= B * rho^n for n > N_cut
    double rho = 0.0;
};

// Scaled Alexander-Remak criterion: true iff
// sum_{n=2}^{N_cut} n^2 |b(n)| r^{n-1} + tail <= 1.
ARCheck check_alexander_remak(const std::vector<double>& coeff_bounds_from_2,
                              const GeometricTail& tail, double r);

// Discrete curvature check of theta -> f(r e^{2 pi i theta}) for
// f(z) = sum b(n) z^n given by coeffs (b(1), b(2), ...).
bool curve_convexity_check(const std::vector<std::complex<double>>& coeffs, double r,
                           int samples);

}  // namespace zerostrip
