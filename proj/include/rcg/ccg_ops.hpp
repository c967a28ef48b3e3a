#ifndef RCG_CCG_OPS_HPP_
#define RCG_CCG_OPS_HPP_

#include "rcg/core.hpp"

namespace rcg
{

/// h^T c + sum_j |h^T g_j|, an upper bound on max_{x in s} h^T x.
struct SupportBound
{
    double value = 0.0;
};

/// <T c, T G, groups, A, b>
Ccg ccg_linear_map(const LinearMap& map, const Ccg& s);

/// <c1 + c2, [G1 G2], groups1 + shifted groups2, blkdiag(A1, A2), [b1; b2]>
Ccg ccg_minkowski(const Ccg& s1, const Ccg& s2);

/**
 * @brief Intersection over the stacked coefficients [beta; gamma].
 *
 * c = c1, G = [G1 0], A = [A1 0; 0 A2; G1 -G2], b = [b1; b2; c2 - c1].
 */
Ccg ccg_intersect(const Ccg& s1, const Ccg& s2);

SupportBound support_upper_bound(const Vector& h, const Ccg& s);

/// d_max = f - h^T c + sum_j |h^T g_j|
double halfspace_slack(const Ccg& s, const Halfspace& hs);

/**
 * @brief Exact intersection with a halfspace.
 *
 * d_max < 0 certifies emptiness. Otherwise one coefficient beta_{m+1} with
 * |beta_{m+1}| <= 1 is appended together with the row
 *   h^T G beta + (d_max / 2) beta_{m+1} = f - h^T c - d_max / 2,
 * which forces h^T x = f - (d_max / 2)(1 + beta_{m+1}) <= f.
 */
HalfspaceCut ccg_halfspace(const Ccg& s, const Halfspace& hs);

} // namespace rcg

#endif
