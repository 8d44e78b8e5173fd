#include "sp2spec/su2.hpp"

#include <cmath>
#include <iostream>

#include "sp2spec/common.hpp"
#include "support.hpp"

using sp2spec::Complex;
using sp2spec::haar_average;
using sp2spec::random_su2;
using sp2spec::Rng;
using sp2spec::SO3Matrix;
using sp2spec::su2_to_so3;
using sp2spec::SU2Element;

namespace {

void requireSU2Close(const char* name, const SU2Element& g, const SU2Element& h, double tol) {
    requireCloseComplex((std::string(name) + ".a").c_str(), g.a, h.a, tol);
    requireCloseComplex((std::string(name) + ".b").c_str(), g.b, h.b, tol);
}

void testFamilies() {
    requireSU2Close("r(0)", SU2Element::r(0.0), SU2Element{}, 0.0);
    requireSU2Close("d(0)", SU2Element::d(0.0), SU2Element{}, 0.0);

    const SU2Element u0 = SU2Element::u(0.0);
    requireCloseComplex("u(0).a", u0.a, {1.0 / std::sqrt(2.0), 0.0}, 1e-16);
    requireCloseComplex("u(0).b", u0.b, {-1.0 / std::sqrt(2.0), 0.0}, 1e-16);

    // d(pi) is the central element -1 and coincides with r(pi).
    const SU2Element minus{{-1.0, 0.0}, {0.0, 0.0}};
    requireSU2Close("d(pi)", SU2Element::d(M_PI), minus, 1e-15);
    requireSU2Close("r(pi)", SU2Element::r(M_PI), minus, 1e-15);

    // One-parameter subgroup laws.
    requireSU2Close("r additive", SU2Element::r(0.4) * SU2Element::r(0.9), SU2Element::r(1.3),
                    1e-15);
    requireSU2Close("d additive", SU2Element::d(0.4) * SU2Element::d(0.9), SU2Element::d(1.3),
                    1e-15);
    std::cout << "[PASS] one-parameter families r, d, u\n";
}

void testGroupLaws() {
    Rng rng(512001);
    double worst_assoc = 0.0;
    double worst_inv = 0.0;
    double worst_norm = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const SU2Element g = random_su2(rng);
        const SU2Element h = random_su2(rng);
        const SU2Element k = random_su2(rng);

        const SU2Element lhs = (g * h) * k;
        const SU2Element rhs = g * (h * k);
        worst_assoc = maxd(worst_assoc, std::abs(lhs.a - rhs.a) + std::abs(lhs.b - rhs.b));

        const SU2Element e = g * g.inverse();
        worst_inv = maxd(worst_inv, std::abs(e.a - 1.0) + std::abs(e.b));

        worst_norm = maxd(worst_norm, (g * h).norm_error());
    }
    REQUIRE(worst_assoc <= 1e-12, "associativity drift above 1e-12");
    REQUIRE(worst_inv <= 1e-12, "g * g^{-1} differs from identity above 1e-12");
    REQUIRE(worst_norm <= 1e-10, "product norm drift above 1e-10");
    std::cout << "[PASS] group laws on 10000 random triples (assoc=" << worst_assoc
              << " inv=" << worst_inv << ")\n";
}

void testHaarAverage() {
    // Constant integrand.
    requireCloseComplex("haar const",
                        haar_average([](const SU2Element&) { return Complex{1.0, 0.0}; }),
                        {1.0, 0.0}, 1e-13);

    // Single spin-1/2 matrix coefficients (the entries a and b themselves)
    // average to zero; the rule is exact for them, so demand near round-off.
    requireCloseComplex("haar a", haar_average([](const SU2Element& g) { return g.a; }),
                        {0.0, 0.0}, 1e-13);
    requireCloseComplex("haar b", haar_average([](const SU2Element& g) { return g.b; }),
                        {0.0, 0.0}, 1e-13);

    // Schur orthogonality: the squared modulus of one spin-1/2 coefficient
    // averages to 1/(2*1/2+1) = 1/2.
    requireCloseComplex("haar |a|^2",
                        haar_average([](const SU2Element& g) { return Complex{std::norm(g.a)}; }),
                        {0.5, 0.0}, 1e-12);

    // Same game one level up: entries of the 3x3 image are spin-1 matrix
    // coefficients, so single entries vanish and squares average to 1/3.
    requireCloseComplex("haar so3 entry",
                        haar_average([](const SU2Element& g) {
                            return Complex{su2_to_so3(g).at(1, 2), 0.0};
                        }),
                        {0.0, 0.0}, 1e-13);
    requireCloseComplex("haar so3 entry^2",
                        haar_average([](const SU2Element& g) {
                            const double v = su2_to_so3(g).at(1, 2);
                            return Complex{v * v, 0.0};
                        }),
                        {1.0 / 3.0, 0.0}, 1e-12);

    requireDomainError(
        "haar non-finite",
        [] {
            haar_average([](const SU2Element& g) {
                return (g.a.real() < 0.5) ? Complex{std::nan(""), 0.0} : Complex{0.0, 0.0};
            });
        },
        "non-finite integrand");
    requireDomainError("haar resolution",
                       [] { haar_average([](const SU2Element&) { return Complex{1.0}; }, 1); },
                       "resolution");
    std::cout << "[PASS] haar_average: constants, orthogonality, Schur weights\n";
}

void testConjugationTrace() {
    for (double phi : {0.3, 1.1, 2.9}) {
        for (double theta : {0.2, 0.7, 1.4}) {
            const SU2Element conj_u =
                SU2Element::d(phi) * SU2Element::u(theta) * SU2Element::d(-phi);
            requireCloseComplex("conjugated trace", conj_u.trace(), SU2Element::u(theta).trace(),
                                1e-12);
        }
    }
    std::cout << "[PASS] trace invariant under d-conjugation\n";
}

void testSO3Map() {
    // Identity maps to the identity.
    const SO3Matrix id = su2_to_so3(SU2Element{});
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            requireCloseAbs("so3(id)", id.at(i, j), (i == j) ? 1.0 : 0.0, 1e-15);
        }
    }

    Rng rng(77002);
    for (int trial = 0; trial < 200; ++trial) {
        const SU2Element g = random_su2(rng);
        const SU2Element h = random_su2(rng);
        const SO3Matrix Rg = su2_to_so3(g);
        const SO3Matrix Rh = su2_to_so3(h);
        const SO3Matrix Rgh = su2_to_so3(g * h);
        const SO3Matrix prod = Rg * Rh;

        double worst = 0.0;
        for (int i = 0; i < 9; ++i) worst = maxd(worst, absd(Rgh.m[i] - prod.m[i]));
        REQUIRE(worst <= 1e-10, "su2_to_so3 homomorphism drift above 1e-10");

        // Orthogonality R^T R = I and det R = 1.
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double dot = 0.0;
                for (int k = 0; k < 3; ++k) dot += Rg.at(k, i) * Rg.at(k, j);
                requireCloseAbs("R^T R", dot, (i == j) ? 1.0 : 0.0, 1e-10);
            }
        }
        const double det =
            Rg.at(0, 0) * (Rg.at(1, 1) * Rg.at(2, 2) - Rg.at(1, 2) * Rg.at(2, 1)) -
            Rg.at(0, 1) * (Rg.at(1, 0) * Rg.at(2, 2) - Rg.at(1, 2) * Rg.at(2, 0)) +
            Rg.at(0, 2) * (Rg.at(1, 0) * Rg.at(2, 1) - Rg.at(1, 1) * Rg.at(2, 0));
        requireCloseAbs("det R", det, 1.0, 1e-10);

        // Kernel: -g and g have the same image.
        const SU2Element neg{-g.a, -g.b};
        const SO3Matrix Rneg = su2_to_so3(neg);
        for (int i = 0; i < 9; ++i) {
            requireCloseAbs("so3(-g)", Rneg.m[i], Rg.m[i], 1e-12);
        }
    }

    // r_theta lands in the stabilizer of the first axis: block-diag(1, 2x2
    // rotation by 2 theta).
    for (double theta : {0.25, 1.0, 2.2}) {
        const SO3Matrix R = su2_to_so3(SU2Element::r(theta));
        requireCloseAbs("r image 00", R.at(0, 0), 1.0, 1e-14);
        requireCloseAbs("r image 01", R.at(0, 1), 0.0, 1e-14);
        requireCloseAbs("r image 02", R.at(0, 2), 0.0, 1e-14);
        requireCloseAbs("r image 10", R.at(1, 0), 0.0, 1e-14);
        requireCloseAbs("r image 20", R.at(2, 0), 0.0, 1e-14);
        requireCloseAbs("r image 11", R.at(1, 1), std::cos(2 * theta), 1e-14);
        requireCloseAbs("r image 12", R.at(1, 2), std::sin(2 * theta), 1e-14);
        requireCloseAbs("r image 21", R.at(2, 1), -std::sin(2 * theta), 1e-14);
        requireCloseAbs("r image 22", R.at(2, 2), std::cos(2 * theta), 1e-14);
    }
    std::cout << "[PASS] su2_to_so3: homomorphism, orthogonality, kernel, r-image\n";
}

}  // namespace

int main() {
    testFamilies();
    testGroupLaws();
    testHaarAverage();
    testConjugationTrace();
    testSO3Map();
    std::cout << "All su2 checks passed\n";
    return 0;
}
