#include "sp2spec/su2.hpp"

#include <cmath>

namespace sp2spec {

SU2Element SU2Element::r(double theta) {
    SP2_DOMAIN_CHECK(std::isfinite(theta), "SU2Element::r: angle must be finite");
    return {Complex{std::cos(theta), 0.0}, Complex{-std::sin(theta), 0.0}};
}

SU2Element SU2Element::d(double theta) {
    SP2_DOMAIN_CHECK(std::isfinite(theta), "SU2Element::d: angle must be finite");
    return {std::polar(1.0, theta), Complex{0.0, 0.0}};
}

SU2Element SU2Element::u(double theta) {
    SP2_DOMAIN_CHECK(std::isfinite(theta), "SU2Element::u: angle must be finite");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return {std::polar(inv_sqrt2, theta), Complex{-inv_sqrt2, 0.0}};
}

SU2Element SU2Element::inverse() const { return {std::conj(a), -b}; }

double SU2Element::norm_error() const { return std::abs(std::norm(a) + std::norm(b) - 1.0); }

SU2Element operator*(const SU2Element& g, const SU2Element& h) {
    Complex a = g.a * h.a - g.b * std::conj(h.b);
    Complex b = g.a * h.b + g.b * std::conj(h.a);
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

SU2Element random_su2(Rng& rng) {
    while (true) {
        const Complex a{rng.normal(), rng.normal()};
        const Complex b{rng.normal(), rng.normal()};
        const double n2 = std::norm(a) + std::norm(b);
        if (n2 > 1e-12) {
            const double n = std::sqrt(n2);
            return {a / n, b / n};
        }
    }
}

SO3Matrix operator*(const SO3Matrix& x, const SO3Matrix& y) {
    SO3Matrix out;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 3; ++k) acc += x.at(i, k) * y.at(k, j);
            out.at(i, j) = acc;
        }
    }
    return out;
}

SO3Matrix su2_to_so3(const SU2Element& g) {
    const Complex a2b2 = g.a * g.a + g.b * g.b;
    const Complex a2mb2 = g.a * g.a - g.b * g.b;
    const Complex ab = g.a * g.b;
    const Complex abbar = g.a * std::conj(g.b);
    SO3Matrix out;
    out.at(0, 0) = a2b2.real();
    out.at(0, 1) = -a2mb2.imag();
    out.at(0, 2) = 2.0 * ab.imag();
    out.at(1, 0) = a2b2.imag();
    out.at(1, 1) = a2mb2.real();
    out.at(1, 2) = -2.0 * ab.real();
    out.at(2, 0) = 2.0 * abbar.imag();
    out.at(2, 1) = 2.0 * abbar.real();
    out.at(2, 2) = std::norm(g.a) - std::norm(g.b);
    return out;
}

Complex haar_average(const std::function<Complex(const SU2Element&)>& f, int resolution) {
    SP2_DOMAIN_CHECK(resolution >= 2, "haar_average: resolution must be >= 2");
    const int nphi = resolution;
    const GaussLegendre gl(resolution / 2);
    const double phi_step = 2.0 * M_PI / nphi;

    KahanSum re;
    KahanSum im;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
        // x = cos(2 theta) turns the sin(2 theta) d theta weight on [0, pi/2]
        // into dx/2 on [-1, 1].
        const double theta = 0.5 * std::acos(gl.nodes[i]);
        const double ct = std::cos(theta);
        const double st = std::sin(theta);
        const double w = 0.5 * gl.weights[i];
        for (int k1 = 0; k1 < nphi; ++k1) {
            const double phi1 = k1 * phi_step;
            for (int k2 = 0; k2 < nphi; ++k2) {
                const double phi2 = k2 * phi_step;
                const SU2Element g{std::polar(ct, phi1 + phi2), -std::polar(st, phi1 - phi2)};
                const Complex sample = f(g);
                SP2_DOMAIN_CHECK(std::isfinite(sample.real()) && std::isfinite(sample.imag()),
                                 "haar_average: non-finite integrand");
                re.add(w * sample.real());
                im.add(w * sample.imag());
            }
        }
    }
    const double cells = static_cast<double>(nphi) * nphi;
    return {re.value() / cells, im.value() / cells};
}

}  // namespace sp2spec
