#include "sp2spec/numerics.hpp"

#include <cmath>

#include "sp2spec/common.hpp"

namespace sp2spec {

Complex circle_quadrature(const std::function<Complex(double)>& f, int nodes) {
    SP2_DOMAIN_CHECK(nodes >= 1, "circle_quadrature: nodes must be >= 1");
    const double step = 2.0 * M_PI / nodes;
    KahanSum re;
    KahanSum im;
    for (int k = 0; k < nodes; ++k) {
        const Complex sample = f(k * step);
        SP2_DOMAIN_CHECK(std::isfinite(sample.real()) && std::isfinite(sample.imag()),
                         "circle_quadrature: non-finite integrand");
        re.add(sample.real());
        im.add(sample.imag());
    }
    return {re.value() / nodes, im.value() / nodes};
}

double legendre(int n, double x) {
    SP2_DOMAIN_CHECK(n >= 0, "legendre: degree must be >= 0");
    SP2_DOMAIN_CHECK(std::abs(x) <= 1.0, "legendre: out of domain");
    if (n == 0) return 1.0;
    double prev = 1.0;  // P_0
    double curr = x;    // P_1
    for (int k = 1; k < n; ++k) {
        const double next = ((2 * k + 1) * x * curr - k * prev) / (k + 1);
        prev = curr;
        curr = next;
    }
    return curr;
}

TailBound tail_bound(double alpha, double x) {
    SP2_DOMAIN_CHECK(alpha > 1.0, "tail_bound: divergent tail");
    SP2_DOMAIN_CHECK(x > 0.0, "tail_bound: x must be positive");
    TailBound result;
    result.alpha = alpha;
    result.x = x;
    result.bound = alpha / (alpha - 1.0) * std::pow(x, 1.0 - alpha);
    return result;
}

namespace {

// One level of the adaptive bisection. `whole` is Simpson over [a,b] with
// midpoint m; the panel is accepted when the two half-panel estimates agree
// with it to 15*tol (the factor comes from the O(h^4) error model), and the
// Richardson correction (s2 - whole)/15 is added on acceptance.
double simpson_recurse(const std::function<double(double)>& f, double a, double fa, double b,
                       double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double s2 = left + right;
    if (depth <= 0 || std::abs(s2 - whole) <= 15.0 * tol) {
        return s2 + (s2 - whole) / 15.0;
    }
    return simpson_recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol) {
    SP2_DOMAIN_CHECK(abs_tol > 0.0, "adaptive_simpson: tolerance must be positive");
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_recurse(f, a, fa, b, fb, m, fm, whole, abs_tol, 48);
}

GaussLegendre::GaussLegendre(int n) {
    SP2_DOMAIN_CHECK(n >= 1, "GaussLegendre: node count must be >= 1");
    nodes.resize(static_cast<size_t>(n));
    weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // P_n(x) and P_{n-1}(x) by the recurrence, then
            // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1).
            double prev = 1.0;
            double curr = x;
            for (int k = 1; k < n; ++k) {
                const double next = ((2 * k + 1) * x * curr - k * prev) / (k + 1);
                prev = curr;
                curr = next;
            }
            deriv = n * (x * curr - prev) / (x * x - 1.0);
            const double step = curr / deriv;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        nodes[static_cast<size_t>(n - 1 - i)] = x;
        weights[static_cast<size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * deriv * deriv);
    }
}

double gaussian_ridge_ratio(double u, double v) {
    SP2_DOMAIN_CHECK(std::isfinite(u) && std::isfinite(v),
                     "gaussian_ridge_ratio: arguments must be finite");
    const auto integrand = [u, v](double s) {
        const double d = u - v * std::cos(s);
        return std::exp(-d * d);
    };
    // The mass sits in the band |cos s - u/v| <~ 1/|v|, which is invisible to a
    // coarse stencil when |v| is large: every sample can land in the e^{-x^2}
    // floor and the recursion would terminate at once. Seed the adaptive pass
    // with uniform panels narrower than the band before recursing.
    const int panels = 16 + static_cast<int>(std::min(240.0, 4.0 * std::ceil(std::abs(v))));
    const double panel_tol = 1e-10 / panels;
    KahanSum total;
    for (int k = 0; k < panels; ++k) {
        const double a = M_PI * k / panels;
        const double b = M_PI * (k + 1) / panels;
        total.add(adaptive_simpson(integrand, a, b, panel_tol));
    }
    const double integral = total.value() / M_PI;
    const double weight = std::sqrt((std::abs(u + v) + 1.0) * (std::abs(u - v) + 1.0));
    return integral * weight;
}

}  // namespace sp2spec
