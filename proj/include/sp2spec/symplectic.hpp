#pragma once

#include <array>

#include "sp2spec/common.hpp"
#include "sp2spec/su2.hpp"

namespace sp2spec {

// Row-major 2x2 complex matrix: the preimage side of the U(2) embedding.
struct CMat2 {
    std::array<Complex, 4> e{};

    Complex at(int i, int j) const { return e[static_cast<size_t>(2 * i + j)]; }
    Complex& at(int i, int j) { return e[static_cast<size_t>(2 * i + j)]; }

    static CMat2 identity();
    static CMat2 diag(Complex x, Complex y);
    static CMat2 from_su2(const SU2Element& g);

    CMat2 adjoint() const;
    Complex det() const { return e[0] * e[3] - e[1] * e[2]; }

    // max |(u* u - I)_{ij}|, the distance from unitarity.
    double unitary_defect() const;

    friend CMat2 operator*(const CMat2& x, const CMat2& y);
};

// Row-major 4x4 real matrix, used for Sp(2, R) elements with respect to the
// form J = (0, I2; -I2, 0).
struct SpMatrix {
    std::array<double, 16> e{};

    double at(int i, int j) const { return e[static_cast<size_t>(4 * i + j)]; }
    double& at(int i, int j) { return e[static_cast<size_t>(4 * i + j)]; }

    static SpMatrix identity();
    static SpMatrix form_j();

    // The one- and two-parameter families used throughout:
    //   d(beta, gamma) = diag(e^beta, e^gamma, e^-beta, e^-gamma),
    //   v(s)           = iota(e^{is} I2)   (v(pi) = -I4, central),
    //   w(t1, t2)      = iota(diag(e^{i t1}, e^{i t2})).
    static SpMatrix d(double beta, double gamma);
    static SpMatrix v(double s);
    static SpMatrix w(double t1, double t2);

    SpMatrix transpose() const;

    // Symplectic inverse -J g^T J; equals g^{-1} when g is symplectic.
    SpMatrix sp_inverse() const;

    // max |(g^T J g - J)_{ij}|.
    double symplectic_defect() const;

    double det() const;

    friend SpMatrix operator*(const SpMatrix& x, const SpMatrix& y);
};

double frobenius_distance(const SpMatrix& x, const SpMatrix& y);

// Throws "not symplectic" when the defect exceeds tol.
void require_symplectic(const SpMatrix& g, double tol = 1e-8);

// The embedding iota(A + iB) = (A, -B; B, A), a ring homomorphism from
// M2(C) into M4(R) with iota(X*) = iota(X)^T and det(iota(X)) = |det X|^2.
// It maps U(2) onto the maximal compact subgroup K of Sp(2, R).
SpMatrix iota(const CMat2& x);
SpMatrix iota(const SU2Element& g);

// Reads the preimage off the block structure, averaging the two copies of
// each real/imaginary part that the block form carries.
CMat2 iota_inverse(const SpMatrix& k);

// An element of K presented by its unitary preimage.
struct KElement {
    CMat2 u;

    SpMatrix embed() const { return iota(u); }
};

// g = iota(k1) . d(beta, gamma) . iota(k2) with beta >= gamma >= 0.
struct KAKResult {
    KElement k1;
    double beta = 0.0;
    double gamma = 0.0;
    KElement k2;

    SpMatrix reconstruct() const;
};

// Numeric KAK decomposition: diagonalizes g^T g with a cyclic Jacobi sweep,
// pairs the eigenstructure into (mu, 1/mu) symplectic planes, and fixes the
// residual diagonal-sign freedom by making the first entry of modulus above
// 1e-12 in each column of k1's preimage positive (real part, falling back to
// the imaginary part when the real part vanishes). Inputs whose spectrum is
// entirely clustered at 1 are returned as pure K elements (beta = gamma = 0).
KAKResult kak(const SpMatrix& g);

// Polar form of the 2x2 real matrix (a, -c; c, d) with a, d >= 0:
//   (a, -c; c, d) = r_phi . diag(lambda, mu) . r_phi,
// with lambda, mu >= 0 (lambda >= mu iff a >= d), phi in [-pi/4, pi/4], and
//   lambda + mu = sqrt((a+d)^2 + 4c^2),  lambda - mu = a - d,
//   tan(2 phi) = 2c / (a + d),           lambda mu = ad + c^2.
// When a = d = 0 the angle degenerates; the convention is phi = pi/4 for
// c >= 0 and -pi/4 otherwise.
struct SL2Polar {
    double phi = 0.0;
    double lambda = 0.0;
    double mu = 0.0;
};
SL2Polar sl2_polar(double a, double c, double d);

// Closed-form KAK data for d(alpha, alpha) . w(theta, pi/2 - theta) .
// d(alpha, alpha) = w(phi, phi_prime) . d(beta, gamma) . w(phi, phi_prime):
//   sinh beta = sinh(2 alpha) cos theta,   sinh gamma = sinh(2 alpha) sin theta,
//   tan(2 phi) = tan(theta) / cosh(2 alpha),
//   tan(2 phi_prime) = 1 / (tan(theta) cosh(2 alpha)),
// with phi, phi_prime in [0, pi/4]. Note beta >= gamma iff theta <= pi/4.
struct So2Prediction {
    double beta = 0.0;
    double gamma = 0.0;
    double phi = 0.0;
    double phi_prime = 0.0;
};
So2Prediction structural_so2_predict(double alpha, double theta);

// Closed-form KAK data for d(alpha, 0) . iota(u_theta) . d(alpha, 0) =
// iota(r_phi) . w(omega1, omega2) . d(beta, gamma) . w(omega1, omega2) .
// iota(r_phi), where u_theta = (e^{i theta}, -1; 1, e^{-i theta})/sqrt(2):
//   sinh beta sinh gamma = sinh^2(alpha) / 2,
//   sinh beta - sinh gamma = sinh(2 alpha) cos(theta) / sqrt(2),
//   tan(2 phi) = 1 / (cosh alpha cos theta),
//   omega1 = arcsin(sin theta / (sqrt(2) cosh beta)) / 2,
//   omega2 = -arcsin(sin theta / (sqrt(2) cosh gamma)) / 2,
// solved through the polar form of Y = (sinh(2a) cos t, -sinh a; sinh a, 0),
// whose singular values are sqrt(2) sinh beta >= sqrt(2) sinh gamma. All
// angle branches lie in [-pi/4, pi/4].
struct U1Prediction {
    double beta = 0.0;
    double gamma = 0.0;
    double phi = 0.0;
    double omega1 = 0.0;
    double omega2 = 0.0;
};
U1Prediction structural_u1_predict(double alpha, double theta);

// iota(Haar U(2)) . d(beta, gamma) . iota(Haar U(2)) with beta uniform in
// [0, 3] and gamma uniform in [0, beta]; Haar on U(2) is a Haar SU(2) draw
// times a uniform central phase.
SpMatrix random_symplectic(Rng& rng);

}  // namespace sp2spec
