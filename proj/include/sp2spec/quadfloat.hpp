#pragma once

#include <quadmath.h>

namespace sp2spec {

// 113-bit binary128 scalar. Used internally where double's 53-bit mantissa is
// eaten by cancellation (high-spin representation matrices combine binomial
// terms of size ~2^l with alternating signs, so results near 2^-l lose ~l bits).
using qfloat = __float128;

inline const qfloat kQPi = acosq(static_cast<qfloat>(-1));

inline qfloat q_abs(qfloat x) { return fabsq(x); }
inline qfloat q_sqrt(qfloat x) { return sqrtq(x); }
inline qfloat q_cos(qfloat x) { return cosq(x); }
inline qfloat q_sin(qfloat x) { return sinq(x); }
inline double to_double(qfloat x) { return static_cast<double>(x); }

struct QComplex {
    qfloat re = 0;
    qfloat im = 0;

    friend QComplex operator+(QComplex a, QComplex b) { return {a.re + b.re, a.im + b.im}; }
    friend QComplex operator-(QComplex a, QComplex b) { return {a.re - b.re, a.im - b.im}; }
    friend QComplex operator*(QComplex a, QComplex b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend QComplex operator*(qfloat s, QComplex a) { return {s * a.re, s * a.im}; }

    QComplex& operator+=(QComplex o) {
        re += o.re;
        im += o.im;
        return *this;
    }

    QComplex conj() const { return {re, -im}; }
    qfloat abs2() const { return re * re + im * im; }
};

// Integer power by repeated squaring.
inline QComplex q_pow_int(QComplex base, unsigned n) {
    QComplex result{1, 0};
    while (n != 0) {
        if (n & 1u) result = result * base;
        base = base * base;
        n >>= 1u;
    }
    return result;
}

}  // namespace sp2spec
