#include "sp2spec/symplectic.hpp"

#include <algorithm>
#include <cmath>

namespace sp2spec {

namespace {

std::array<double, 16> mul4(const std::array<double, 16>& x, const std::array<double, 16>& y) {
    std::array<double, 16> out{};
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 4; ++k) {
            const double xik = x[static_cast<size_t>(4 * i + k)];
            if (xik == 0.0) continue;
            for (int j = 0; j < 4; ++j) {
                out[static_cast<size_t>(4 * i + j)] += xik * y[static_cast<size_t>(4 * k + j)];
            }
        }
    }
    return out;
}

// (J x)_0 = x_2, (J x)_1 = x_3, (J x)_2 = -x_0, (J x)_3 = -x_1.
std::array<double, 4> apply_form_j(const std::array<double, 4>& x) {
    return {x[2], x[3], -x[0], -x[1]};
}

double dot4(const std::array<double, 4>& x, const std::array<double, 4>& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

void normalize4(std::array<double, 4>& x) {
    const double n = std::sqrt(dot4(x, x));
    SP2_LOGIC_CHECK(n > 1e-150, "kak: eigenvector collapsed during pairing");
    for (double& c : x) c /= n;
}

// Cyclic Jacobi diagonalization of a symmetric 4x4 matrix: on return s is
// numerically diagonal and the input equals v . s . v^T with v orthogonal.
// Converges quadratically; the sweep cap is far above what 4x4 ever needs.
void jacobi_symmetric4(std::array<double, 16>& s, std::array<double, 16>& v) {
    v = SpMatrix::identity().e;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        double scale = 0.0;
        for (int p = 0; p < 4; ++p) {
            scale = std::max(scale, std::fabs(s[static_cast<size_t>(5 * p)]));
            for (int q = p + 1; q < 4; ++q) {
                off = std::max(off, std::fabs(s[static_cast<size_t>(4 * p + q)]));
            }
        }
        if (off <= 1e-15 * (1.0 + scale)) break;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const double apq = s[static_cast<size_t>(4 * p + q)];
                if (std::fabs(apq) <= 1e-300) continue;
                const double tau =
                    (s[static_cast<size_t>(5 * q)] - s[static_cast<size_t>(5 * p)]) / (2.0 * apq);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;
                for (int k = 0; k < 4; ++k) {
                    const double skp = s[static_cast<size_t>(4 * k + p)];
                    const double skq = s[static_cast<size_t>(4 * k + q)];
                    s[static_cast<size_t>(4 * k + p)] = c * skp - sn * skq;
                    s[static_cast<size_t>(4 * k + q)] = sn * skp + c * skq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double spk = s[static_cast<size_t>(4 * p + k)];
                    const double sqk = s[static_cast<size_t>(4 * q + k)];
                    s[static_cast<size_t>(4 * p + k)] = c * spk - sn * sqk;
                    s[static_cast<size_t>(4 * q + k)] = sn * spk + c * sqk;
                }
                for (int k = 0; k < 4; ++k) {
                    const double vkp = v[static_cast<size_t>(4 * k + p)];
                    const double vkq = v[static_cast<size_t>(4 * k + q)];
                    v[static_cast<size_t>(4 * k + p)] = c * vkp - sn * vkq;
                    v[static_cast<size_t>(4 * k + q)] = sn * vkp + c * vkq;
                }
            }
        }
    }
}

// Fixes the residual diag(+-1, +-1) freedom shared by the two K parts: in
// each column of u1 the first entry of modulus above 1e-12 is made positive
// (real part; imaginary part decides when the real part sits at zero), and
// the compensating sign lands on the matching row of u2.
void canonicalize_signs(CMat2& u1, CMat2& u2) {
    for (int j = 0; j < 2; ++j) {
        Complex lead{0.0, 0.0};
        for (int i = 0; i < 2; ++i) {
            if (std::abs(u1.at(i, j)) > 1e-12) {
                lead = u1.at(i, j);
                break;
            }
        }
        const double key = std::fabs(lead.real()) > 1e-12 ? lead.real() : lead.imag();
        if (key < 0.0) {
            for (int i = 0; i < 2; ++i) {
                u1.at(i, j) = -u1.at(i, j);
                u2.at(j, i) = -u2.at(j, i);
            }
        }
    }
}

}  // namespace

CMat2 CMat2::identity() {
    CMat2 out;
    out.at(0, 0) = {1.0, 0.0};
    out.at(1, 1) = {1.0, 0.0};
    return out;
}

CMat2 CMat2::diag(Complex x, Complex y) {
    CMat2 out;
    out.at(0, 0) = x;
    out.at(1, 1) = y;
    return out;
}

CMat2 CMat2::from_su2(const SU2Element& g) {
    CMat2 out;
    out.at(0, 0) = g.a;
    out.at(0, 1) = g.b;
    out.at(1, 0) = -std::conj(g.b);
    out.at(1, 1) = std::conj(g.a);
    return out;
}

CMat2 CMat2::adjoint() const {
    CMat2 out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) out.at(i, j) = std::conj(at(j, i));
    }
    return out;
}

double CMat2::unitary_defect() const {
    const CMat2 p = adjoint() * (*this);
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Complex want = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            worst = std::max(worst, std::abs(p.at(i, j) - want));
        }
    }
    return worst;
}

CMat2 operator*(const CMat2& x, const CMat2& y) {
    CMat2 out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.at(i, j) = x.at(i, 0) * y.at(0, j) + x.at(i, 1) * y.at(1, j);
        }
    }
    return out;
}

SpMatrix SpMatrix::identity() {
    SpMatrix out;
    for (int i = 0; i < 4; ++i) out.at(i, i) = 1.0;
    return out;
}

SpMatrix SpMatrix::form_j() {
    SpMatrix out;
    out.at(0, 2) = 1.0;
    out.at(1, 3) = 1.0;
    out.at(2, 0) = -1.0;
    out.at(3, 1) = -1.0;
    return out;
}

SpMatrix SpMatrix::d(double beta, double gamma) {
    SpMatrix out;
    out.at(0, 0) = std::exp(beta);
    out.at(1, 1) = std::exp(gamma);
    out.at(2, 2) = std::exp(-beta);
    out.at(3, 3) = std::exp(-gamma);
    return out;
}

SpMatrix SpMatrix::v(double s) {
    return iota(CMat2::diag(std::polar(1.0, s), std::polar(1.0, s)));
}

SpMatrix SpMatrix::w(double t1, double t2) {
    return iota(CMat2::diag(std::polar(1.0, t1), std::polar(1.0, t2)));
}

SpMatrix SpMatrix::transpose() const {
    SpMatrix out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) out.at(i, j) = at(j, i);
    }
    return out;
}

SpMatrix SpMatrix::sp_inverse() const {
    const SpMatrix j = form_j();
    SpMatrix mj;  // -J
    for (int i = 0; i < 16; ++i) mj.e[static_cast<size_t>(i)] = -j.e[static_cast<size_t>(i)];
    return mj * transpose() * j;
}

double SpMatrix::symplectic_defect() const {
    const SpMatrix j = form_j();
    const SpMatrix gjg = transpose() * j * (*this);
    double worst = 0.0;
    for (int i = 0; i < 16; ++i) {
        worst = std::max(worst, std::fabs(gjg.e[static_cast<size_t>(i)] -
                                          j.e[static_cast<size_t>(i)]));
    }
    return worst;
}

double SpMatrix::det() const {
    std::array<double, 16> m = e;
    double out = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::fabs(m[static_cast<size_t>(4 * r + col)]) >
                std::fabs(m[static_cast<size_t>(4 * piv + col)])) {
                piv = r;
            }
        }
        const double lead = m[static_cast<size_t>(4 * piv + col)];
        if (lead == 0.0) return 0.0;
        if (piv != col) {
            for (int c = 0; c < 4; ++c) {
                std::swap(m[static_cast<size_t>(4 * piv + c)],
                          m[static_cast<size_t>(4 * col + c)]);
            }
            out = -out;
        }
        out *= lead;
        for (int r = col + 1; r < 4; ++r) {
            const double f = m[static_cast<size_t>(4 * r + col)] / lead;
            if (f == 0.0) continue;
            for (int c = col; c < 4; ++c) {
                m[static_cast<size_t>(4 * r + c)] -= f * m[static_cast<size_t>(4 * col + c)];
            }
        }
    }
    return out;
}

SpMatrix operator*(const SpMatrix& x, const SpMatrix& y) {
    SpMatrix out;
    out.e = mul4(x.e, y.e);
    return out;
}

double frobenius_distance(const SpMatrix& x, const SpMatrix& y) {
    double acc = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double d = x.e[static_cast<size_t>(i)] - y.e[static_cast<size_t>(i)];
        acc += d * d;
    }
    return std::sqrt(acc);
}

void require_symplectic(const SpMatrix& g, double tol) {
    SP2_DOMAIN_CHECK(g.symplectic_defect() <= tol, "not symplectic");
}

SpMatrix iota(const CMat2& x) {
    SpMatrix out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double re = x.at(i, j).real();
            const double im = x.at(i, j).imag();
            out.at(i, j) = re;
            out.at(i, j + 2) = -im;
            out.at(i + 2, j) = im;
            out.at(i + 2, j + 2) = re;
        }
    }
    return out;
}

SpMatrix iota(const SU2Element& g) { return iota(CMat2::from_su2(g)); }

CMat2 iota_inverse(const SpMatrix& k) {
    CMat2 out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.at(i, j) = {0.5 * (k.at(i, j) + k.at(i + 2, j + 2)),
                            0.5 * (k.at(i + 2, j) - k.at(i, j + 2))};
        }
    }
    return out;
}

SpMatrix KAKResult::reconstruct() const {
    return k1.embed() * SpMatrix::d(beta, gamma) * k2.embed();
}

KAKResult kak(const SpMatrix& g) {
    require_symplectic(g, 1e-8);

    std::array<double, 16> s = (g.transpose() * g).e;
    std::array<double, 16> vec{};
    jacobi_symmetric4(s, vec);

    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(), [&s](int x, int y) {
        return s[static_cast<size_t>(5 * x)] > s[static_cast<size_t>(5 * y)];
    });
    const double mu1 = s[static_cast<size_t>(5 * order[0])];
    const double mu2 = s[static_cast<size_t>(5 * order[1])];

    KAKResult out;
    if (mu1 < 1.0 + 1e-10) {
        // Spectrum fully clustered at 1: g is already a K element.
        out.k1 = KElement{iota_inverse(g)};
        out.k2 = KElement{CMat2::identity()};
        canonicalize_signs(out.k1.u, out.k2.u);
        return out;
    }

    // g^T g = U diag(mu1, mu2, 1/mu1, 1/mu2) U^T with U = [v1 v2 -Jv1 -Jv2]
    // orthogonal and symplectic: J swaps the (mu, 1/mu) eigenplanes, and
    // projecting v2 off {v1, Jv1} restores the J-orthogonality that eigen
    // clusters can blur.
    std::array<double, 4> v1{};
    std::array<double, 4> v2{};
    for (int i = 0; i < 4; ++i) {
        v1[static_cast<size_t>(i)] = vec[static_cast<size_t>(4 * i + order[0])];
        v2[static_cast<size_t>(i)] = vec[static_cast<size_t>(4 * i + order[1])];
    }
    normalize4(v1);
    const std::array<double, 4> jv1 = apply_form_j(v1);
    const double c1 = dot4(v2, v1);
    const double c2 = dot4(v2, jv1);
    for (int i = 0; i < 4; ++i) {
        v2[static_cast<size_t>(i)] -= c1 * v1[static_cast<size_t>(i)] +
                                      c2 * jv1[static_cast<size_t>(i)];
    }
    normalize4(v2);
    const std::array<double, 4> jv2 = apply_form_j(v2);

    SpMatrix frame;
    for (int i = 0; i < 4; ++i) {
        frame.at(i, 0) = v1[static_cast<size_t>(i)];
        frame.at(i, 1) = v2[static_cast<size_t>(i)];
        frame.at(i, 2) = -jv1[static_cast<size_t>(i)];
        frame.at(i, 3) = -jv2[static_cast<size_t>(i)];
    }

    out.beta = 0.5 * std::log(mu1);
    out.gamma = 0.5 * std::log(std::max(mu2, 1.0));
    const SpMatrix k2m = frame.transpose();
    const SpMatrix k1m = g * frame * SpMatrix::d(-out.beta, -out.gamma);
    out.k1 = KElement{iota_inverse(k1m)};
    out.k2 = KElement{iota_inverse(k2m)};
    canonicalize_signs(out.k1.u, out.k2.u);
    return out;
}

SL2Polar sl2_polar(double a, double c, double d) {
    SP2_DOMAIN_CHECK(a >= 0.0 && d >= 0.0, "sl2_polar: a and d must be >= 0");
    SL2Polar out;
    const double sum = std::hypot(a + d, 2.0 * c);
    out.lambda = std::max(0.5 * (sum + (a - d)), 0.0);
    out.mu = std::max(0.5 * (sum - (a - d)), 0.0);
    if (a == 0.0 && d == 0.0) {
        out.phi = c >= 0.0 ? 0.25 * M_PI : -0.25 * M_PI;
    } else {
        out.phi = 0.5 * std::atan2(2.0 * c, a + d);
    }
    return out;
}

So2Prediction structural_so2_predict(double alpha, double theta) {
    const double sh = std::sinh(2.0 * alpha);
    const double ch = std::cosh(2.0 * alpha);
    So2Prediction out;
    out.beta = std::asinh(sh * std::cos(theta));
    out.gamma = std::asinh(sh * std::sin(theta));
    out.phi = 0.5 * std::atan2(std::sin(theta), std::cos(theta) * ch);
    out.phi_prime = 0.5 * std::atan2(std::cos(theta), std::sin(theta) * ch);
    return out;
}

U1Prediction structural_u1_predict(double alpha, double theta) {
    // Polar data of Y = (sinh(2a) cos t, -sinh a; sinh a, 0); the max(0, .)
    // absorbs the sign that cos(theta) picks up from rounding at the
    // endpoints theta = +-pi/2.
    const SL2Polar p =
        sl2_polar(std::max(std::sinh(2.0 * alpha) * std::cos(theta), 0.0), std::sinh(alpha), 0.0);
    const double rt2 = std::sqrt(2.0);
    U1Prediction out;
    out.beta = std::asinh(p.lambda / rt2);
    out.gamma = std::asinh(p.mu / rt2);
    out.phi = p.phi;
    out.omega1 = 0.5 * std::asin(std::sin(theta) / (rt2 * std::cosh(out.beta)));
    out.omega2 = -0.5 * std::asin(std::sin(theta) / (rt2 * std::cosh(out.gamma)));
    return out;
}

SpMatrix random_symplectic(Rng& rng) {
    const double beta = rng.uniform(0.0, 3.0);
    const double gamma = rng.uniform(0.0, beta);
    CMat2 left = CMat2::from_su2(random_su2(rng));
    CMat2 right = CMat2::from_su2(random_su2(rng));
    const Complex phase_left = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
    const Complex phase_right = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
    for (int i = 0; i < 4; ++i) {
        left.e[static_cast<size_t>(i)] *= phase_left;
        right.e[static_cast<size_t>(i)] *= phase_right;
    }
    return iota(left) * SpMatrix::d(beta, gamma) * iota(right);
}

}  // namespace sp2spec
