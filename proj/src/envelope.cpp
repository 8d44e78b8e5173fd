#include "sp2spec/envelope.hpp"

#include <algorithm>
#include <cmath>

namespace sp2spec {

double p_poly(const EnvelopeParams& params, double s) {
    return s * s - (2.0 * params.s1 + params.s2) * s + params.s1 * params.s2;
}

double s_minus(double s1, double s2) {
    return s1 + 0.5 * s2 - std::sqrt(s1 * s1 + 0.25 * s2 * s2);
}

EnvelopeParams make_envelope_params(double s1, double s2, double s,
                                    double kappa) {
    SP2_DOMAIN_CHECK(s1 > 0.0, "envelope: s1 must be positive");
    SP2_DOMAIN_CHECK(s2 > 0.0, "envelope: s2 must be positive");
    SP2_DOMAIN_CHECK(s >= 0.0, "envelope: s must be nonnegative");
    SP2_DOMAIN_CHECK(kappa >= 0.0, "envelope: kappa must be nonnegative");
    SP2_DOMAIN_CHECK(s < s_minus(s1, s2),
                     "envelope: s must stay below s_minus(s1, s2)");
    EnvelopeParams params;
    params.s1 = s1;
    params.s2 = s2;
    params.s = s;
    params.kappa = kappa;
    if (s1 > 1.0 || s2 > 1.0) {
        params.warning = "decay rates above 1 are outside the intended regime";
    }
    return params;
}

double epsilon(const EnvelopeParams& params, double beta, double gamma) {
    SP2_DOMAIN_CHECK(beta >= gamma && gamma >= 0.0, "not in closed Weyl chamber");
    const double p = p_poly(params, params.s);
    const double rate1 = beta / (params.s1 + params.s2 - params.s);
    const double rate2 =
        (beta + gamma) / (2.0 * params.s1 + params.s2 - params.s);
    return std::exp(-p * std::max(rate1, rate2));
}

double epsilon_cover(const EnvelopeParams& params, const CoverElement& x) {
    const CoverKAK f = cover_kak(x);
    return epsilon(params, f.beta, f.gamma) *
           std::exp(params.kappa * std::fabs(phi(x)));
}

}  // namespace sp2spec
