#pragma once

#include <array>
#include <functional>

#include "sp2spec/common.hpp"
#include "sp2spec/numerics.hpp"

namespace sp2spec {

// Element of SU(2), stored as the top row (a, b) of the matrix
// [[a, b], [-conj(b), conj(a)]] with |a|^2 + |b|^2 = 1. Products renormalize
// the row, so long words stay on the group to within ~1e-15 per factor.
struct SU2Element {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};

    // The three one-parameter families used throughout:
    //   r(theta): real rotation (cos, -sin; sin, cos),
    //   d(theta): diag(e^{i theta}, e^{-i theta}),
    //   u(theta): (e^{i theta}, -1; 1, e^{-i theta}) / sqrt(2).
    static SU2Element r(double theta);
    static SU2Element d(double theta);
    static SU2Element u(double theta);

    // Conjugate transpose, which is the inverse on SU(2).
    SU2Element inverse() const;

    // a + conj(a) = 2 Re(a).
    Complex trace() const { return {2.0 * a.real(), 0.0}; }

    // | |a|^2 + |b|^2 - 1 |, the distance of the stored row from exact
    // unit norm.
    double norm_error() const;

    friend SU2Element operator*(const SU2Element& g, const SU2Element& h);
};

// Haar-uniform random element: four independent Gaussians, normalized.
SU2Element random_su2(Rng& rng);

// Row-major 3x3 real matrix; the image of su2_to_so3.
struct SO3Matrix {
    std::array<double, 9> m{};

    double& at(int i, int j) { return m[static_cast<size_t>(3 * i + j)]; }
    double at(int i, int j) const { return m[static_cast<size_t>(3 * i + j)]; }

    friend SO3Matrix operator*(const SO3Matrix& x, const SO3Matrix& y);
};

// The 2-to-1 covering homomorphism SU(2) -> SO(3); kernel {1, -1}. With
// alpha = a, beta = b the rows are
//   [ Re(alpha^2+beta^2),  Im(beta^2-alpha^2),  2 Im(alpha beta) ]
//   [ Im(alpha^2+beta^2),  Re(alpha^2-beta^2), -2 Re(alpha beta) ]
//   [ 2 Im(alpha conj(beta)), 2 Re(alpha conj(beta)), |alpha|^2-|beta|^2 ].
SO3Matrix su2_to_so3(const SU2Element& g);

// Haar average of f over SU(2) by the Euler-angle product rule: elements are
// written d_{phi1} r_theta d_{phi2} with phi1, phi2 in [0, 2pi) and
// theta in [0, pi/2], carrying weight sin(2 theta) d theta (d phi1 / 2pi)
// (d phi2 / 2pi). Both phi factors use the `resolution`-node trapezoid rule;
// the theta factor substitutes x = cos(2 theta) and uses resolution/2
// Gauss-Legendre nodes. The result is exact for matrix coefficients of the
// spin-l irreducible whenever 2l < resolution. Throws on a non-finite sample.
Complex haar_average(const std::function<Complex(const SU2Element&)>& f, int resolution = 64);

}  // namespace sp2spec
