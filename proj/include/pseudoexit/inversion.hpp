#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pseudoexit/bigfloat.hpp"
#include "pseudoexit/laplace.hpp"

namespace pseudoexit {

enum class InversionMethod { talbot, gaver_stehfest, euler_bromwich };

struct InversionConfig {
    InversionMethod method = InversionMethod::talbot;
    // talbot: number of contour nodes M; euler: 2*(node_count/2)+1 evaluations;
    // gaver_stehfest: number of terms (even).
    int node_count = 32;
    // Working decimal digits for gaver_stehfest (0 = auto, 1.5 * node_count).
    // When set for a contour method, forces that precision instead of the
    // automatic double-with-escalation path.
    int precision_digits = 0;
    std::vector<double> time_grid;
    // Flag PRECISION_LOSS when the two contour methods disagree beyond 1e-4
    // relative.
    bool cross_check = true;
    // Rerun a contour sum in extended precision when the cancellation estimate
    // cannot support ~1e-9 relative accuracy in double.
    bool auto_precision = true;

    void validate() const;
};

// Transform evaluator: the contour methods sample at complex points in double
// precision, the Gaver-Stehfest and escalated paths through eval_mp at the
// globally active BigFloat precision.
struct LaplaceTransform {
    std::function<std::complex<double>(std::complex<double>)> eval_d;
    std::function<MpComplex<BigFloat>(const MpComplex<BigFloat>&)> eval_mp;
};

LaplaceTransform make_exit_transform(const ProcessParams& params, TransformKind kind, double x,
                                     int k = 0, Side side = Side::minus);

struct InversionResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute, from the cancellation model
    bool precision_loss = false;
    bool escalated = false;
};

InversionResult invert_scalar(const LaplaceTransform& transform, double t,
                              const InversionConfig& cfg);

// Times below this are reported as exact zeros of the densities. The
// transforms decay like exp(-lambda^(1/2N) d) with d = min(x-a, b-x), which
// bounds the original by exp(-E(t)) with
//   E(t) = (2N-1)/(2N) * d^(2N/(2N-1)) * (2N t)^(-1/(2N-1))
// (d^2/(4t) in the classical case). The cutoff is the time where E reaches 70,
// safely below every tolerance in the library.
double density_zero_time(const ProcessParams& params, double x);

// Inverted exit-time quantities on a time grid. survival = 1 - cdf by
// construction; the independently inverted survival transform is exposed as
// the separate operation below and serves as a cross-check.
struct DensityTable {
    ProcessParams params;
    double x = 0.0;
    std::vector<double> t;
    std::vector<double> density;   // I(t; x)
    std::vector<double> cdf;       // J(t; x)
    std::vector<double> survival;  // 1 - J
    std::vector<std::vector<double>> joint_minus, joint_plus;  // I_k^+-, [k][i]
    std::vector<std::uint8_t> flags;  // per-point PRECISION_LOSS
    bool precision_loss = false;
};

DensityTable exit_time_density(const ProcessParams& params, double x, const InversionConfig& cfg);

// As exit_time_density, plus the signed joint columns I_k^+-(t; x).
DensityTable exit_joint_weights(const ProcessParams& params, double x,
                                const InversionConfig& cfg);

// P_x{a < min <= max < b at time t}, inverted from its own transform.
InversionResult survival_probability(const ProcessParams& params, double x, double t,
                                     const InversionConfig& cfg);

// Total time-integral of I_k^side: the lambda -> 0+ limit of the transform,
// taken in extended precision with one Richardson step. Equals the Hermite
// value H_k^side(x).
double joint_total_mass(const ProcessParams& params, double x, int k, Side side);

// Smallest probed horizon T with 1 - J(T; x) <= tol; the tail-mass check and
// default grids use it.
double calibrate_horizon(const ProcessParams& params, double x, const InversionConfig& cfg,
                         double tol = 1e-4);

std::vector<double> default_time_grid(const ProcessParams& params, double x,
                                      const InversionConfig& cfg, int count = 40);

// Grid parallelism cap: min(hardware, PSEUDOEXIT_THREADS).
int max_threads();
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace pseudoexit
