#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "sp2spec/common.hpp"
#include "sp2spec/wigner.hpp"

namespace sp2spec {

// Safety factor applied to the fitted coefficient envelope (whose fitted
// constant is 1, attained at l = 0) whenever it enters a certified tail
// bound. The margin is validated against the exact coefficients up to
// l = 600 in the test suite.
inline constexpr double kEnvelopeSafety = 1.1;

// Averaging operator over the circle family of double rotations: diagonal on
// each (l, p) eigenspace with eigenvalue e^{2ip theta} c_p^l and multiplicity
// 2l + 1.
struct SpectralModelS {
    explicit SpectralModelS(Half lmax) : table(lmax) {}

    CplTable table;

    Complex eigenvalue(Half ell, Half p, double theta) const;
};

// Averaging operator over the conjugacy sphere: diagonal on each integer
// degree-n block with real eigenvalue lambda_n(theta) and multiplicity 2n + 1.
struct SpectralModelT {
    double eigenvalue(int n, double theta) const;
};

// lambda_n(theta) = <pi_n(d_theta) w_n, w_n> with w_n the rotation-invariant
// unit vector of the degree-n block; real within 1e-10, lambda_0 = 1,
// |lambda_n| <= 1.
double t_eigenvalue(int n, double theta);

struct SchattenResult {
    double q = 0.0;                   // exponent; +infinity selects the operator norm
    double value = 0.0;               // truncated norm, power_sum^{1/q}
    Half lmax = Half::from_twice(0);  // truncation level actually used
    double tail = 0.0;                // certified residual bound (power-sum units)
    std::array<double, 2> certified_value_interval{0.0, 0.0};
    bool truncated = false;           // tail target unreachable at the hard cap
    std::string warning;              // set when the exponent lies outside the certified range
};

// Schatten-q norm of T_theta - T_{pi/4}. Certified for p > 4; p in (2, 4]
// returns the capped partial sum with a warning and an infinite tail.
// p = +infinity returns the operator-norm scan.
SchattenResult schatten_T(double p, double theta);

// Schatten-q norm of S_theta1 - S_theta2. Certified for q > 10; q in (4, 10]
// returns a fixed-level partial sum with a warning and an infinite tail.
// q = +infinity returns the operator-norm scan.
SchattenResult schatten_S(double q, double theta1, double theta2);

// Certified bound (power-sum units) on the part of the S double sum beyond
// lmax, given alpha_p^q indexed by 2|p| up to 2*lmax. Finite only for q > 10.
double s_tail_certificate(double q, int twice_lmax, const std::vector<double>& alpha_q);

// Per-|p| power sums sum_{l <= lmax} (2l+1) |c_p^l|^q on the (l, p) lattice,
// indexed by 2|p|. These depend only on (q, lmax), not the angles, so they
// are computed once per key and shared across angle sweeps.
class SEngine {
  public:
    static SEngine& instance();

    std::shared_ptr<const std::vector<double>> power_sums(double q, int twice_lmax);

  private:
    std::mutex mu_;
    std::map<std::pair<double, int>, std::shared_ptr<const std::vector<double>>> cache_;
};

enum class NormKind { S, T };

struct HolderFitPoint {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double value = 0.0;
    double ratio = 0.0;
    bool skipped = false;    // zero separation: no ratio defined
    bool truncated = false;  // underlying norm hit its truncation cap
};

struct HolderFitResult {
    double exponent_expected = 0.0;
    double max_ratio = 0.0;
    std::vector<HolderFitPoint> points;
};

// Fits the Holder constant: value / |dtheta|^exponent maximized over the grid,
// with exponent 1/4 - 5/(2q) for kind S and 1/2 - 2/p for kind T (whose grid
// pairs compare against pi/4).
HolderFitResult holder_fit(NormKind kind, double q_or_p,
                           const std::vector<std::pair<double, double>>& theta_grid);

// Standard fit grids: 20 log-spaced separations in [1e-3, pi/2] against 0 for
// S, and 30 evenly spaced theta in [pi/6, pi/3] against pi/4 for T (an even
// count never samples pi/4 itself).
std::vector<std::pair<double, double>> holder_grid_s(int npoints = 20);
std::vector<std::pair<double, double>> holder_grid_t(int npoints = 30);

}  // namespace sp2spec
