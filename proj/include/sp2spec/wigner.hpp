#pragma once

#include <string>
#include <vector>

#include "sp2spec/common.hpp"
#include "sp2spec/numerics.hpp"
#include "sp2spec/su2.hpp"

namespace sp2spec {

// Matrix of the spin-l irreducible representation of SU(2) on the space of
// homogeneous polynomials of degree 2l in (z1, z2). Basis vectors are indexed
// by p = -l..l (row/column i = l + p) and are the normalized monomials
//   e_p = z1^{l-p} z2^{l+p} * sqrt(C(2l, l-p)),
// orthonormal for the inner product with ||z1^m z2^n||^2 = m! n! / (m+n)!.
struct IrrepMatrix {
    Half ell;
    int dim = 0;  // 2l + 1
    std::vector<Complex> entries;  // row-major

    Complex at(int i, int j) const { return entries[static_cast<size_t>(i) * dim + j]; }

    // Row/column index of basis label p.
    int index_of(Half p) const;
};

// pi_l(g) in the basis above, where g acts on polynomials by
// (pi_l(g) P)(z) = P(z * g) with the row-vector action
// z * g = (a z1 - conj(b) z2, b z1 + conj(a) z2). Entries come from the
// binomial expansion of the transformed monomials; the alternating sums cancel
// up to ~l binary digits, so they are accumulated in binary128 and rounded to
// double once per entry. Throws for negative l.
IrrepMatrix irrep(Half ell, const SU2Element& g);

// Matrix coefficient f^l_{p,p'}(g) = <pi_l(g) h_{p'}, h_p> in the
// *unnormalized* monomial basis h_p = z1^{l-p} z2^{l+p}: equals the (p, p')
// entry of irrep(l, g) divided by sqrt(C(2l, l-p) C(2l, l-p')). Convention
// fixed by this basis: f^{1/2}_{1/2,1/2}(d_theta) = e^{-i theta}. Throws when
// p or p' is not on the index lattice of l.
Complex wigner_coeff(Half ell, Half p, Half p_prime, const SU2Element& g);

// The eigenvalue c_p^l as a contour integral: the average over phi of
//   2^{-l} (1 + r^{-1} e^{-i phi})^{l-p} (1 - r e^{i phi})^{l+p},
// which is independent of r > 0. Evaluated by the equal-weight circle rule
// with 2(2l)+4 nodes — exact, the integrand is a trigonometric polynomial of
// degree <= 2l — in binary128 (the binomial expansion of the product cancels
// ~l digits). Returns the real part after asserting the imaginary residue is
// <= 1e-10. Throws for r <= 0 or |p| > l.
double cpl_integral(Half ell, Half p, double r = 1.0);

// Independent route to the same numbers: average the full irrep matrices of
// the conjugates d_phi u_0 d_{-phi} over phi (equal-weight rule, 4l+4 nodes).
// The average is diagonal and its (p, p) entry is c_p^l. The whole diagonal is
// returned indexed by i = l + p; each node's matrix is built by irrep(), with
// no shortcut through the contour-integral route.
std::vector<double> cpl_group_average_diagonal(Half ell);

// The (p, p) entry of the average described above.
double cpl_group_average(Half ell, Half p);

// Streams c_p^l for fixed |p| along l = |p|, |p|+1, ... in O(1) memory using
// the three-term recurrence (in the degree n = l - |p|) of the Jacobi
// polynomials P_n^{(0, 2|p|)} at the origin, which represent c_p^l as
//   c_p^l = 2^{-|p|} P_{l-|p|}^{(0, 2|p|)}(0).
// A separate power-of-two exponent keeps the scaled iterates inside the
// double range, so the stream stays accurate out to l ~ 2e4 and beyond.
class CplStream {
  public:
    explicit CplStream(int twice_p);

    Half ell() const { return Half::from_twice(twice_ell_); }
    double value() const;
    void advance();

  private:
    int twice_p_;
    int twice_ell_;
    long n_ = 0;        // degree index l - |p|
    double prev_ = 0.0; // scaled P_{n-1}
    double curr_ = 1.0; // scaled P_n
    long exponent_ = 0;

    void renormalize();
};

// c_p^l via the recurrence route (third independent method).
double cpl_recurrence(Half ell, Half p);

// The pointwise decay envelope of the table: |c_p^l| <= C * envelope with
//   envelope(l, p) = min((1+l)^{-1/4}, | |p| - l/sqrt(2) |^{-1/2}).
// The second factor is taken as +infinity on its singular line, so the min is
// always the finite branch.
double cpl_envelope(Half ell, Half p);

// The unit vector w in the spin-l space fixed by every pi_l(r_theta): the
// normalized coefficient vector of the invariant polynomial (z1^2 + z2^2)^l,
// whose entries C(l,k)/sqrt(C(2l,2k)) are all positive (so the computation
// stays well conditioned at large l). Exists only for integer l;
// half-integer l throws "no invariant vector" (the central element -1 acts
// as -1 there).
std::vector<Complex> so2_invariant_vector(Half ell);

// Immutable table of c_p^l for all l <= lmax on the half-integer lattice,
// built row-by-row from cpl_integral (rows are independent and are computed
// in parallel blocks). Row l holds 2l+1 values indexed by i = l + p.
class CplTable {
  public:
    explicit CplTable(Half lmax);

    Half lmax() const { return lmax_; }
    double c(Half ell, Half p) const;
    const std::vector<double>& row(Half ell) const;

    // CSV with header `ell,p,c`; l and p as exact halves (`1.5`), c with 15
    // significant digits.
    std::string to_csv() const;

  private:
    Half lmax_;
    std::vector<std::vector<double>> rows_;  // index: twice_ell
};

}  // namespace sp2spec
