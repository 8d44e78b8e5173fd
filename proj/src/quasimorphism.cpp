#include "sp2spec/quasimorphism.hpp"

#include <array>
#include <cmath>
#include <complex>

namespace sp2spec {
namespace {

// Generic 4x4 inverse (Gauss-Jordan, partial pivoting). Deliberately not
// the symplectic shortcut -J g^T J: the point of the cross-check in
// circle_c is to compare against an inverse computed without assuming g
// lies on the group.
std::array<double, 16> general_inverse(const std::array<double, 16>& m) {
    std::array<double, 16> a = m;
    std::array<double, 16> inv{};
    for (int i = 0; i < 4; ++i) inv[4 * i + i] = 1.0;
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::fabs(a[4 * r + col]) > std::fabs(a[4 * pivot + col])) pivot = r;
        }
        SP2_DOMAIN_CHECK(std::fabs(a[4 * pivot + col]) > 1e-300, "degenerate c(g)");
        if (pivot != col) {
            for (int j = 0; j < 4; ++j) {
                std::swap(a[4 * pivot + j], a[4 * col + j]);
                std::swap(inv[4 * pivot + j], inv[4 * col + j]);
            }
        }
        const double scale = 1.0 / a[4 * col + col];
        for (int j = 0; j < 4; ++j) {
            a[4 * col + j] *= scale;
            inv[4 * col + j] *= scale;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = a[4 * r + col];
            if (f == 0.0) continue;
            for (int j = 0; j < 4; ++j) {
                a[4 * r + j] -= f * a[4 * col + j];
                inv[4 * r + j] -= f * inv[4 * col + j];
            }
        }
    }
    return inv;
}


SU2Element su2_from_phased_cmat2(const CMat2& u, const Complex& phase) {
    return SU2Element{phase * u.at(0, 0), phase * u.at(0, 1)};
}

}  // namespace

Complex circle_c(const SpMatrix& g) {
    CMat2 m;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double re = g.at(i, j) + g.at(i + 2, j + 2);
            const double im = g.at(i + 2, j) - g.at(i, j + 2);
            m.e[2 * i + j] = Complex(re, im);
        }
    }

    // Cross-check: the embedded m must equal g + (g^T)^{-1}, with the
    // inverse taken generically. Failure means g is off the group.
    std::array<double, 16> gt{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) gt[4 * i + j] = g.at(j, i);
    }
    const std::array<double, 16> gti = general_inverse(gt);
    const SpMatrix embedded = iota(m);
    double scale = 1.0;
    for (int i = 0; i < 16; ++i) scale = std::max(scale, std::fabs(g.e[i]));
    for (int i = 0; i < 16; ++i) {
        const double expect = g.e[i] + gti[i];
        SP2_DOMAIN_CHECK(std::fabs(embedded.e[i] - expect) <= 1e-6 * scale,
                         "degenerate c(g)");
    }

    const Complex det = m.det();
    const double mag = std::abs(det);
    SP2_DOMAIN_CHECK(mag > 1e-8, "degenerate c(g)");
    return det / mag;
}

EtaResult eta(const SpMatrix& g1, const SpMatrix& g2) {
    const Complex c12 = circle_c(g1 * g2);
    const Complex c1 = circle_c(g1);
    const Complex c2 = circle_c(g2);
    EtaResult out;
    out.value = std::arg(c12 * std::conj(c1) * std::conj(c2));
    out.near_branch_cut = M_PI - std::fabs(out.value) <= 1e-6;
    return out;
}

double cover_defect(const CoverElement& x) {
    return std::abs(Complex(std::cos(x.t), std::sin(x.t)) - circle_c(x.g));
}

CoverElement make_cover(const SpMatrix& g, double t) {
    CoverElement x{g, t};
    SP2_DOMAIN_CHECK(cover_defect(x) <= 1e-8,
                     "cover element: phase does not match c(g)");
    return x;
}

CoverElement cover_identity() { return CoverElement{SpMatrix::identity(), 0.0}; }

CoverElement cover_v(double t) { return CoverElement{SpMatrix::v(t), 2.0 * t}; }

CoverElement cover_d(double beta, double gamma) {
    return CoverElement{SpMatrix::d(beta, gamma), 0.0};
}

CoverElement cover_su2(const SU2Element& h) {
    return CoverElement{iota(h), 0.0};
}

CoverElement cover_mul(const CoverElement& x, const CoverElement& y) {
    return CoverElement{x.g * y.g, x.t + y.t + eta(x.g, y.g).value};
}

CoverElement cover_inverse(const CoverElement& x) {
    return CoverElement{x.g.sp_inverse(), -x.t};
}

double phi(const CoverElement& x) { return 0.5 * x.t; }

CoverKAK cover_kak(const CoverElement& x) {
    const KAKResult base = kak(x.g);
    const CMat2 u1 = base.k1.u;
    const CMat2 u2 = base.k2.u;

    // u = e^{i s'} h with h in SU(2), s' = arg(det u)/2 in (-pi/2, pi/2].
    const double t_prime = 0.5 * std::arg(u1.det());
    double s = 0.5 * std::arg(u2.det());
    SU2Element h1 = su2_from_phased_cmat2(u1, std::polar(1.0, -t_prime));
    SU2Element h2 = su2_from_phased_cmat2(u2, std::polar(1.0, -s));
    if (s < -1e-12) {
        // v_{s' + pi} = -v_{s'}: push the sign onto h2 to land s in [0, pi).
        s += M_PI;
        h2 = SU2Element{-h2.a, -h2.b};
    } else if (s < 0.0) {
        // A barely negative phase would round s' + pi back up to pi itself;
        // absorb it into h2 and keep s at the closed end of [0, pi).
        s = 0.0;
    }

    // Phi(x) = t + s fixes t; the cover invariant forces t - t' into pi Z,
    // and the parity of that sheet index flips h1.
    const double t = phi(x) - s;
    const double sheets = (t - t_prime) / M_PI;
    const double k = std::round(sheets);
    SP2_LOGIC_CHECK(std::fabs(sheets - k) <= 1e-6,
                    "cover_kak: sheet index is not an integer");
    if (std::llround(k) % 2 != 0) h1 = SU2Element{-h1.a, -h1.b};

    return CoverKAK{h1, t, base.beta, base.gamma, s, h2};
}

CoverElement random_cover(Rng& rng) {
    CoverElement x = cover_identity();
    const int factors = rng.uniform_int(1, 4);
    for (int i = 0; i < factors; ++i) {
        switch (rng.uniform_int(0, 2)) {
            case 0:
                x = cover_mul(x, cover_v(rng.uniform(-0.5 * M_PI, 0.5 * M_PI)));
                break;
            case 1: {
                const double beta = rng.uniform(0.0, 1.5);
                x = cover_mul(x, cover_d(beta, rng.uniform(0.0, beta)));
                break;
            }
            default:
                x = cover_mul(x, cover_su2(random_su2(rng)));
                break;
        }
    }
    return x;
}

}  // namespace sp2spec
