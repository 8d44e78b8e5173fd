#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace sp2spec {

using Complex = std::complex<double>;

// Closed-form majorant for the tail of a power series: for alpha > 1 and
// x > 0, sum_{k in (u+Z), k > x} k^{-alpha} <= alpha/(alpha-1) * x^{1-alpha}
// for every grid offset u in [0,1).
struct TailBound {
    double alpha = 0;
    double x = 0;
    double bound = 0;
};

// Equal-weight average of f over `nodes` equally spaced points on [0, 2pi).
// This is the periodic trapezoid rule normalized to a mean, so it reproduces
// (1/2pi) * integral_0^{2pi} f(phi) dphi exactly for every trigonometric
// polynomial of degree < nodes. Throws std::domain_error if any sample is
// non-finite.
Complex circle_quadrature(const std::function<Complex(double)>& f, int nodes);

// Degree-n Legendre polynomial P_n(x) on [-1, 1], evaluated by the three-term
// recurrence (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}. Throws std::domain_error
// when |x| > 1.
double legendre(int n, double x);

// The tail majorant described on TailBound. Throws std::domain_error when
// alpha <= 1 (the comparison integral diverges) or x <= 0.
TailBound tail_bound(double alpha, double x);

// Adaptive Simpson quadrature of f over [a, b] to the given absolute
// tolerance, with Richardson extrapolation on the accepted panels.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10);

// Gauss-Legendre rule on [-1, 1]: `n` nodes, weights summing to 2, exact for
// polynomials of degree < 2n. Nodes are the roots of P_n found by Newton
// iteration from the Chebyshev-like initial guesses.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
    explicit GaussLegendre(int n);
};

// I(u,v) * sqrt((|u+v|+1) * (|u-v|+1)) where
// I(u,v) = (1/pi) * integral_0^pi exp(-(u - v cos s)^2) ds.
// The weight is the reciprocal of the known decay envelope of I, so the ratio
// stays bounded over the whole (u,v) plane; its supremum is the empirical
// constant in that envelope. The integral is evaluated by adaptive Simpson to
// absolute tolerance 1e-10 (the integrand concentrates near cos s = u/v).
double gaussian_ridge_ratio(double u, double v);

}  // namespace sp2spec
