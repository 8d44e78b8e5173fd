#pragma once

#include "sp2spec/common.hpp"
#include "sp2spec/su2.hpp"
#include "sp2spec/symplectic.hpp"

namespace sp2spec {

// The circle function c(g) = det(M)/|det(M)| with M = (A + D) + i(B - C)
// read off the blocks g = (A, C; B, D). M is the preimage of
// g + (g^T)^{-1} = g - JgJ under the U(2) embedding, which the
// implementation verifies against a generic matrix inverse; |det M| =
// 4 cosh(beta) cosh(gamma) >= 4 on the group, so a vanishing determinant
// signals a non-symplectic input ("degenerate c(g)").
Complex circle_c(const SpMatrix& g);

// The group 2-cocycle defined by c(g1 g2) = c(g1) c(g2) e^{i eta}: the
// principal representative arg(c(g1 g2) conj(c(g1)) conj(c(g2))) in
// (-pi, pi]. Values within 1e-6 of +-pi are flagged (the strict bound
// |eta| < pi leaves their branch formally ambiguous); the value is still
// returned.
struct EtaResult {
    double value = 0.0;
    bool near_branch_cut = false;
};
EtaResult eta(const SpMatrix& g1, const SpMatrix& g2);

// Element (g, t) of the universal cover, constrained by e^{it} = c(g).
struct CoverElement {
    SpMatrix g;
    double t = 0.0;
};

// |e^{it} - c(g)| in the complex plane.
double cover_defect(const CoverElement& x);

// Checked constructor: rejects pairs violating the invariant above 1e-8.
CoverElement make_cover(const SpMatrix& g, double t);

// Distinguished cover elements: the identity, the central circle
// v~_t = (v_t, 2t), the diagonal family D~ = (d(beta, gamma), 0), and
// SU(2) lifts (iota(h), 0).
CoverElement cover_identity();
CoverElement cover_v(double t);
CoverElement cover_d(double beta, double gamma);
CoverElement cover_su2(const SU2Element& h);

// (g1, t1) (g2, t2) = (g1 g2, t1 + t2 + eta(g1, g2)).
CoverElement cover_mul(const CoverElement& x, const CoverElement& y);

// (g, t)^{-1} = (g^{-1}, -t).
CoverElement cover_inverse(const CoverElement& x);

// The quasi-morphism Phi(g, t) = t/2; bounded (identically zero) on the
// diagonal family and linear on the central circle, with defect
// |Phi(xy) - Phi(x) - Phi(y)| = |eta|/2 < pi/2.
double phi(const CoverElement& x);

// Cover KAK data: x = (iota(h1), 0) (v_t, 2t) (D~(beta, gamma)) (v_s, 2s)
// (iota(h2), 0) with h1, h2 in SU(2) and s normalized into [0, pi). The
// base KAK's unitary K parts split into determinant-phase times SU(2)
// factors; t carries the remainder of Phi(x) = t + s, and the sheet index
// (t - t')/pi, an exact integer, moves the compensating sign onto h1.
struct CoverKAK {
    SU2Element h1;
    double t = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double s = 0.0;
    SU2Element h2;
};
CoverKAK cover_kak(const CoverElement& x);

// Product of one to four bounded generators (central circle, diagonal,
// SU(2) lifts), keeping the t-coordinate numerically moderate.
CoverElement random_cover(Rng& rng);

}  // namespace sp2spec
