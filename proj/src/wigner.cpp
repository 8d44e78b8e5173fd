#include "sp2spec/wigner.hpp"

#include <cmath>
#include <deque>

#include "sp2spec/quadfloat.hpp"

namespace sp2spec {

namespace {

QComplex to_qcomplex(Complex z) { return {z.real(), z.imag()}; }

// Pascal triangle with binary128 entries, grown on demand and cached per
// thread; exact through the sizes used by irrep construction (C(2000,1000)
// overflows, but callers stay far below that, and C(70,35) ~ 1e20 is well
// inside 2^113). A deque keeps earlier rows stable while growing.
const std::deque<std::vector<qfloat>>& binomial_rows(int nmax) {
    thread_local std::deque<std::vector<qfloat>> tri(1, std::vector<qfloat>{1});
    for (int n = static_cast<int>(tri.size()); n <= nmax; ++n) {
        std::vector<qfloat> row(static_cast<size_t>(n) + 1);
        row[0] = 1;
        row[static_cast<size_t>(n)] = 1;
        const auto& prev = tri.back();
        for (int k = 1; k < n; ++k) {
            row[static_cast<size_t>(k)] =
                prev[static_cast<size_t>(k - 1)] + prev[static_cast<size_t>(k)];
        }
        tri.push_back(std::move(row));
    }
    return tri;
}

std::vector<QComplex> power_table(QComplex base, int nmax) {
    std::vector<QComplex> p(static_cast<size_t>(nmax) + 1);
    p[0] = {1, 0};
    for (int k = 1; k <= nmax; ++k) p[static_cast<size_t>(k)] = p[static_cast<size_t>(k - 1)] * base;
    return p;
}

void check_index_lattice(Half ell, Half p, const char* msg) {
    SP2_DOMAIN_CHECK(std::abs(p.twice) <= ell.twice && (ell.twice - p.twice) % 2 == 0, msg);
}

// Shared machinery for entries of the degree-2l polynomial action matrix.
// Basis vector j is z1^{2l-j} z2^j / sqrt(C(2l, j)-normalization); the entry
// (i, j) is the z1^{2l-i} z2^i coefficient of the transformed basis vector.
struct IrrepBuilder {
    int tl;
    std::vector<QComplex> pow_a, pow_abar, pow_b, pow_mbbar;
    const std::deque<std::vector<qfloat>>& binom;
    std::vector<qfloat> s;

    IrrepBuilder(int tl_in, const SU2Element& g)
        : tl(tl_in),
          pow_a(power_table(to_qcomplex(g.a), tl_in)),
          pow_abar(power_table(to_qcomplex(g.a).conj(), tl_in)),
          pow_b(power_table(to_qcomplex(g.b), tl_in)),
          pow_mbbar(power_table({-g.b.real(), g.b.imag()}, tl_in)),
          binom(binomial_rows(tl_in)),
          s(static_cast<size_t>(tl_in) + 1) {
        for (int i = 0; i <= tl; ++i) {
            s[static_cast<size_t>(i)] =
                q_sqrt(binom[static_cast<size_t>(tl)][static_cast<size_t>(tl - i)]);
        }
    }

    QComplex entry(int i, int j) const {
        const int mj = tl - j;
        const int nj = j;
        const int mi = tl - i;
        // (a z1 - conj(b) z2)^{mj} (b z1 + conj(a) z2)^{nj}, coefficient of
        // z1^{mi} z2^{ni}: split mi = k + (mi - k) between the two factors.
        const int kmin = std::max(0, mi - nj);
        const int kmax = std::min(mj, mi);
        QComplex acc{0, 0};
        for (int k = kmin; k <= kmax; ++k) {
            const qfloat c = binom[static_cast<size_t>(mj)][static_cast<size_t>(k)] *
                             binom[static_cast<size_t>(nj)][static_cast<size_t>(mi - k)];
            QComplex t = pow_a[static_cast<size_t>(k)] * pow_mbbar[static_cast<size_t>(mj - k)];
            t = t * pow_b[static_cast<size_t>(mi - k)];
            t = t * pow_abar[static_cast<size_t>(nj - mi + k)];
            acc += c * t;
        }
        const qfloat scale = s[static_cast<size_t>(j)] / s[static_cast<size_t>(i)];
        return {acc.re * scale, acc.im * scale};
    }
};

}  // namespace

int IrrepMatrix::index_of(Half p) const {
    check_index_lattice(ell, p, "IrrepMatrix: index mismatch");
    return (ell.twice + p.twice) / 2;
}

IrrepMatrix irrep(Half ell, const SU2Element& g) {
    SP2_DOMAIN_CHECK(ell.twice >= 0, "irrep: ell must be >= 0");
    const int tl = ell.twice;  // 2l, also the polynomial degree
    const int dim = tl + 1;

    const IrrepBuilder builder(tl, g);
    IrrepMatrix out{ell, dim, std::vector<Complex>(static_cast<size_t>(dim) * dim)};
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
            const QComplex e = builder.entry(i, j);
            out.entries[static_cast<size_t>(i) * dim + j] = {to_double(e.re), to_double(e.im)};
        }
    }
    return out;
}

Complex wigner_coeff(Half ell, Half p, Half p_prime, const SU2Element& g) {
    SP2_DOMAIN_CHECK(ell.twice >= 0, "wigner_coeff: ell must be >= 0");
    check_index_lattice(ell, p, "wigner_coeff: index mismatch");
    check_index_lattice(ell, p_prime, "wigner_coeff: index mismatch");
    const IrrepMatrix m = irrep(ell, g);
    const int i = (ell.twice + p.twice) / 2;
    const int j = (ell.twice + p_prime.twice) / 2;
    // ||h_p||^2 = 1 / C(2l, l-p), so the h-basis coefficient is the
    // orthonormal-basis entry divided by sqrt(C(2l, l-p) C(2l, l-p')).
    const double tl = ell.twice;
    const auto log_binom = [tl](int k) {
        return std::lgamma(tl + 1.0) - std::lgamma(k + 1.0) - std::lgamma(tl - k + 1.0);
    };
    const double scale =
        std::exp(-0.5 * (log_binom(ell.twice - i) + log_binom(ell.twice - j)));
    return m.at(i, j) * scale;
}

double cpl_integral(Half ell, Half p, double r) {
    SP2_DOMAIN_CHECK(ell.twice >= 0, "cpl_integral: ell must be >= 0");
    SP2_DOMAIN_CHECK(std::isfinite(r) && r > 0.0, "cpl_integral: r must be positive");
    check_index_lattice(ell, p, "cpl_integral: index mismatch");

    const int expo_minus = (ell.twice - p.twice) / 2;  // l - p
    const int expo_plus = (ell.twice + p.twice) / 2;   // l + p
    const int nodes = 2 * ell.twice + 4;               // 2*(2l) + 4
    const qfloat qr = r;

    QComplex sum{0, 0};
    for (int k = 0; k < nodes; ++k) {
        const qfloat phi = 2 * kQPi * k / nodes;
        const qfloat c = q_cos(phi);
        const qfloat sn = q_sin(phi);
        const QComplex f1{1 + c / qr, -sn / qr};  // 1 + e^{-i phi}/r
        const QComplex f2{1 - qr * c, -qr * sn};  // 1 - r e^{i phi}
        sum += q_pow_int(f1, static_cast<unsigned>(expo_minus)) *
               q_pow_int(f2, static_cast<unsigned>(expo_plus));
    }
    // 2^{-l} * node average.
    const qfloat factor = powq(2, -static_cast<qfloat>(ell.twice) / 2) / nodes;
    const qfloat re = sum.re * factor;
    const qfloat im = sum.im * factor;
    SP2_LOGIC_CHECK(q_abs(im) <= 1e-10, "cpl_integral: imaginary residue above 1e-10");
    return to_double(re);
}

std::vector<double> cpl_group_average_diagonal(Half ell) {
    SP2_DOMAIN_CHECK(ell.twice >= 0, "cpl_group_average: ell must be >= 0");
    const int dim = ell.twice + 1;
    const int nodes = 2 * ell.twice + 4;  // entries have phi-frequency <= 2*(2l)

    // Average the full matrices pi_l(d_phi u_0 d_{-phi}) over phi. The result
    // is diagonal (every off-diagonal entry carries a nonzero phi-frequency)
    // and its (p,p) entry is c_p^l.
    std::vector<KahanSum> acc_re(static_cast<size_t>(dim) * dim);
    std::vector<KahanSum> acc_im(static_cast<size_t>(dim) * dim);
    for (int k = 0; k < nodes; ++k) {
        const double phi = 2.0 * M_PI * k / nodes;
        const SU2Element g =
            SU2Element::d(phi) * SU2Element::u(0.0) * SU2Element::d(-phi);
        const IrrepMatrix m = irrep(ell, g);
        for (size_t idx = 0; idx < m.entries.size(); ++idx) {
            acc_re[idx].add(m.entries[idx].real());
            acc_im[idx].add(m.entries[idx].imag());
        }
    }

    std::vector<double> diag(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        const size_t idx = static_cast<size_t>(i) * dim + i;
        const double re = acc_re[idx].value() / nodes;
        const double im = acc_im[idx].value() / nodes;
        SP2_LOGIC_CHECK(std::abs(im) <= 1e-10, "cpl_group_average: imaginary residue above 1e-10");
        diag[static_cast<size_t>(i)] = re;
    }
    return diag;
}

double cpl_group_average(Half ell, Half p) {
    check_index_lattice(ell, p, "cpl_group_average: index mismatch");
    return cpl_group_average_diagonal(ell)[static_cast<size_t>((ell.twice + p.twice) / 2)];
}

CplStream::CplStream(int twice_p) : twice_p_(twice_p), twice_ell_(twice_p) {
    SP2_DOMAIN_CHECK(twice_p >= 0, "CplStream: twice_p must be >= 0");
    // Fold the prefactor 2^{-p} into the tracked exponent; for odd 2p the
    // leftover sqrt(2) goes into the mantissa.
    exponent_ = -((twice_p + 1) / 2);
    curr_ = (twice_p % 2 == 0) ? 1.0 : std::sqrt(2.0);
}

double CplStream::value() const { return std::ldexp(curr_, static_cast<int>(exponent_)); }

void CplStream::advance() {
    const double b = twice_p_;
    ++n_;
    const double n = static_cast<double>(n_);
    double next = 0.0;
    if (n_ == 1) {
        // P_1^{(0,b)}(0) = -b/2; the generic denominator vanishes at b = 0.
        next = -0.5 * b * curr_;
    } else {
        const double c1 = (2 * n + b - 1) * (-b * b);
        const double c2 = -2 * (n - 1) * (n + b - 1) * (2 * n + b);
        const double den = 2 * n * (n + b) * (2 * n + b - 2);
        next = (c1 * curr_ + c2 * prev_) / den;
    }
    prev_ = curr_;
    curr_ = next;
    twice_ell_ += 2;
    renormalize();
}

void CplStream::renormalize() {
    const double m = std::max(std::abs(curr_), std::abs(prev_));
    if (m == 0.0) return;
    if (m > 0x1.0p500 || m < 0x1.0p-500) {
        const int k = std::ilogb(m);
        curr_ = std::ldexp(curr_, -k);
        prev_ = std::ldexp(prev_, -k);
        exponent_ += k;
    }
}

double cpl_recurrence(Half ell, Half p) {
    SP2_DOMAIN_CHECK(ell.twice >= 0, "cpl_recurrence: ell must be >= 0");
    check_index_lattice(ell, p, "cpl_recurrence: index mismatch");
    CplStream stream(std::abs(p.twice));
    while (stream.ell() < ell) stream.advance();
    return stream.value();
}

double cpl_envelope(Half ell, Half p) {
    const double l = ell.value();
    const double first = std::pow(1.0 + l, -0.25);
    const double dist = std::abs(std::abs(p.value()) - l / std::sqrt(2.0));
    if (dist <= 0.0) return first;
    return std::min(first, 1.0 / std::sqrt(dist));
}

std::vector<Complex> so2_invariant_vector(Half ell) {
    SP2_DOMAIN_CHECK(ell.twice >= 0, "so2_invariant_vector: ell must be >= 0");
    SP2_DOMAIN_CHECK(ell.is_integer(), "so2_invariant_vector: no invariant vector");
    const int tl = ell.twice;
    const int l = tl / 2;

    // r_theta maps (z1, z2) to (z1 cos + z2 sin, -z1 sin + z2 cos), which
    // preserves z1^2 + z2^2, so the invariant line -- the range of the circle
    // average of pi_l(r_theta) -- is spanned by (z1^2 + z2^2)^l. Expanding in
    // the orthonormal monomial basis gives the coordinates directly:
    //   w_i = C(l, k) / sqrt(C(2l, 2k))   at   i = 2l - 2k,   zero at odd i.
    // All terms are positive, so this stays well conditioned at large l,
    // where quadrature of the matrix average cancels catastrophically (the
    // quadrature route survives as a test oracle at moderate l).
    const auto& binom = binomial_rows(tl);
    std::vector<qfloat> u(static_cast<size_t>(l) + 1);
    qfloat norm2 = 0;
    for (int k = 0; k <= l; ++k) {
        u[static_cast<size_t>(k)] =
            binom[static_cast<size_t>(l)][static_cast<size_t>(k)] /
            q_sqrt(binom[static_cast<size_t>(tl)][static_cast<size_t>(2 * k)]);
        norm2 += u[static_cast<size_t>(k)] * u[static_cast<size_t>(k)];
    }
    const qfloat inv_norm = 1 / q_sqrt(norm2);

    // Every entry is positive, so the canonical phase (largest entry real
    // positive) holds without adjustment.
    std::vector<Complex> w(static_cast<size_t>(tl) + 1, Complex{0.0, 0.0});
    for (int k = 0; k <= l; ++k) {
        w[static_cast<size_t>(tl - 2 * k)] = {to_double(u[static_cast<size_t>(k)] * inv_norm), 0.0};
    }
    return w;
}

CplTable::CplTable(Half lmax) : lmax_(lmax) {
    SP2_DOMAIN_CHECK(lmax.twice >= 0, "CplTable: lmax must be >= 0");
    rows_ = parallel_blocks(lmax.twice + 1, [](int tl) {
        std::vector<double> row(static_cast<size_t>(tl) + 1);
        for (int i = 0; i <= tl; ++i) {
            const int tp = 2 * i - tl;
            row[static_cast<size_t>(i)] =
                cpl_integral(Half::from_twice(tl), Half::from_twice(tp));
        }
        return row;
    });
}

double CplTable::c(Half ell, Half p) const {
    SP2_DOMAIN_CHECK(ell.twice >= 0 && ell <= lmax_, "CplTable: ell out of range");
    check_index_lattice(ell, p, "CplTable: index mismatch");
    return rows_[static_cast<size_t>(ell.twice)][static_cast<size_t>((ell.twice + p.twice) / 2)];
}

const std::vector<double>& CplTable::row(Half ell) const {
    SP2_DOMAIN_CHECK(ell.twice >= 0 && ell <= lmax_, "CplTable: ell out of range");
    return rows_[static_cast<size_t>(ell.twice)];
}

std::string CplTable::to_csv() const {
    std::string out = "ell,p,c\n";
    for (int tl = 0; tl <= lmax_.twice; ++tl) {
        for (int i = 0; i <= tl; ++i) {
            const int tp = 2 * i - tl;
            out += half_to_string(Half::from_twice(tl));
            out += ',';
            out += half_to_string(Half::from_twice(tp));
            out += ',';
            out += format_g15(rows_[static_cast<size_t>(tl)][static_cast<size_t>(i)]);
            out += '\n';
        }
    }
    return out;
}

}  // namespace sp2spec
