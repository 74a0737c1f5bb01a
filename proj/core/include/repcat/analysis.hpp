#pragma once

#include <string>
#include <vector>

namespace repcat {

enum class ExponentFamily { HalfDPlus1, QuarterDPlus1 };

inline double family_exponent(ExponentFamily f, int d) {
    return f == ExponentFamily::HalfDPlus1 ? (d + 1) / 2.0 : (d + 1) / 4.0;
}

struct FitPoint {
    int d = 0;
    double p = 0.0;
    double p_l = 0.0;
    double ci_low = 0.0, ci_high = 0.0;
    bool censored = false;
};

/// Joint fit of log p_L = log A + e(d) (log p - log p_th) with one shared A.
struct ScalingFit {
    double a = 0.0;
    double p_th = 0.0;
    ExponentFamily family = ExponentFamily::HalfDPlus1;
    double residual_sum_sq = 0.0;
    int n_points = 0;

    double predict(int d, double p) const;
};

/// Least squares over all non-censored points with p <= p_max (p_max <= 0
/// keeps everything). Throws std::invalid_argument when under-determined
/// (< 2 distances or < 2 usable points).
ScalingFit fit_threshold(const std::vector<FitPoint>& points, ExponentFamily family,
                         double p_max = 0.0);

/// Free-exponent straight-line fit of log p_L vs log p for a single distance.
double fit_exponent_single_distance(const std::vector<FitPoint>& points, int d);

/// Crossing-based threshold: median interpolated crossing p of successive
/// distance curves. Requires each pair of curves to cross in the scanned range.
double crossing_threshold(const std::vector<FitPoint>& points);

/// Logical Z probability of one control block when every EC step is ideal:
/// binomial tail of accumulating more than floor(d/2) errors at per-qubit
/// probability p' = d p.
double accumulation_pzl(int d, double p);
bool accumulation_pzl_valid(int d, double p);  // dp << 1 validity flag

/// Worst-case logical X probability per QEC cycle: 2 d (d-1) p_X^CX.
double logical_x_bound(int d, double nbar, double ratio);

struct OverheadPoint {
    int d = 0;
    int nbar = 0;
    int total_modes = 0;  // 2d - 1 data + ancilla
    double achieved_p_l = 0.0;
    double x_floor = 0.0;
    bool feasible = false;
};

/// Smallest odd d and smallest nbar <= 15 with
/// A (p / p_th)^((d+1)/2) + 2 d (d-1) p_X^CX(nbar, ratio) <= target.
/// When the bit-flip floor makes the target infeasible at nbar = 15, the
/// returned point minimizes the achieved bound instead and is flagged
/// infeasible.
OverheadPoint memory_overhead(double target_p_l, double ratio, const ScalingFit& fit,
                              int max_d = 499);

struct BreakEvenPoint {
    double physical_error = 0.0;  // gate-error axis where min_d p_L crosses it
    bool found = false;
};

/// Interpolated crossing of min-over-d logical error versus the physical
/// gate error axis (points keyed by the same axis).
BreakEvenPoint breakeven(const std::vector<FitPoint>& points);

struct ConcatOptimum {
    int d_opt = 0;
    double p_l_min = 0.0;
};

/// Minimizes 2 * accumulation_pzl(d, p) over odd d (two control blocks).
ConcatOptimum optimal_distance_concat(double p, int max_d = 399);

}  // namespace repcat
