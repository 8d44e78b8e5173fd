#pragma once

#include <string>

#include "sp2spec/common.hpp"
#include "sp2spec/quasimorphism.hpp"

namespace sp2spec {

// Decay exponents for the matrix-coefficient envelope. s1 and s2 are the
// per-factor decay rates of the two one-parameter operator families, s is
// the sacrificed slack (must stay below the root s_minus(s1, s2)), and
// kappa scales the quasi-morphism correction on the cover. The shipped
// defaults s1 = 1/4, s2 = 1/8 mirror the certified operator-norm
// estimates; they are configurable inputs, not constants of nature.
struct EnvelopeParams {
    double s1 = 0.25;
    double s2 = 0.125;
    double s = 0.0;
    double kappa = 0.0;
    std::string warning;  // set when s1 or s2 exceeds 1 (accepted, flagged)
};

// P(s) = s^2 - (2 s1 + s2) s + s1 s2, evaluated at an arbitrary s.
double p_poly(const EnvelopeParams& params, double s);

// The smaller root s1 + s2/2 - sqrt(s1^2 + s2^2/4) of P; lies strictly
// between 0 and min(s1, s2), and is not symmetric in its arguments.
double s_minus(double s1, double s2);

// Validates positivity, s < s_minus(s1, s2), and kappa >= 0; rates above 1
// are accepted with a warning recorded on the returned value.
EnvelopeParams make_envelope_params(double s1, double s2, double s,
                                    double kappa);

// epsilon(beta, gamma) =
//   exp(-P(s) max(beta/(s1+s2-s), (beta+gamma)/(2 s1+s2-s)))
// on the closed Weyl chamber beta >= gamma >= 0; the two branches of the
// max swap along beta = ((s1+s2-s)/s1) gamma, and since P(s) > 0 below
// s_minus the value decays in beta no slower than e^{-c beta} with
// c = P(s)/(2 s1 + s2 - s).
double epsilon(const EnvelopeParams& params, double beta, double gamma);

// Cover variant: epsilon at the (beta, gamma) of the base KAK, times
// e^{kappa |Phi(x)|}; reduces to e^{kappa |t|} on the central circle.
double epsilon_cover(const EnvelopeParams& params, const CoverElement& x);

}  // namespace sp2spec
