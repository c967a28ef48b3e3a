#ifndef RCG_RCG_OPS_HPP_
#define RCG_RCG_OPS_HPP_

/**
 * @file rcg_ops.hpp
 * @brief Operations on roundabout sets (outer CCG minus inner CCG).
 *
 * An Rcg is stored as the (outer, inner) pair. Its points are
 *   { c_o + G_o beta | beta feasible for the outer constraints,
 *     no eta with G_in eta = (c_o - c_in) + G_o beta feasible for the inner constraints }.
 */

#include "rcg/core.hpp"

#include <optional>
#include <variant>

namespace rcg
{

/// A CCG or an RCG, the operands of the set calculus.
using GeneratorSet = std::variant<Ccg, Rcg>;

Rcg rcg_from_difference(const Ccg& outer, const Ccg& inner);

/// Applies T to both members: <T G_o, T G_in, T c_o, T c_in, ...>.
Rcg rcg_linear_map(const LinearMap& map, const Rcg& s);

/**
 * @brief Sum of an RCG and a CCG.
 *
 * The exclusion right-hand side (c_o - c_in) + G_o beta + c_ccg + G_ccg gamma
 * equals x - c_in for the summed point x, so the result is
 * (outer + t) minus the unchanged inner set. This is not the pointwise sum
 * of the two sets in general: a summand wider than the hole fills it.
 */
Rcg rcg_minkowski_ccg(const Rcg& s, const Ccg& t);

/// (outer intersected with t) minus inner; the exclusion acts on the beta block.
Rcg rcg_intersect_ccg(const Rcg& s, const Ccg& t);

/// Dispatch over CCG and RCG operands. RCG with RCG throws UnsupportedOperation.
GeneratorSet set_minkowski(const GeneratorSet& a, const GeneratorSet& b);
GeneratorSet set_intersect(const GeneratorSet& a, const GeneratorSet& b);
GeneratorSet set_linear_map(const LinearMap& map, const GeneratorSet& s);

// specializations

/// All groups use the 2-norm. Throws NormError otherwise.
Rcg make_roundabout_ellipsotope(const Ccg& outer, const Ccg& inner);

/// All groups use the infinity norm; equality constraints allowed.
Rcg make_roundabout_constrained_zonotope(const Ccg& outer, const Ccg& inner);

/**
 * @brief Zonotope minus scaled zonotope, no equality constraints.
 *
 * r holds one radius for a single inner group, or one radius per inner
 * generator (singleton groups). The radius is stored on the inner group with
 * G_in unscaled; absorb_radii gives the view with r absorbed into the generators.
 */
Rcg make_roundabout_zonotope(const Vector& c_o, const Matrix& G_o, const Vector& c_in,
                             const Matrix& G_in, const Vector& r);

/// Same set with every group radius folded into its generator (and A) columns.
Ccg absorb_radii(const Ccg& s);

/**
 * @brief Parameter-space form for concentric sets with shared full-rank generators.
 *
 * When c_o = c_in, G_o = G_in = G, no equality constraints and G has full column
 * rank, beta = G^+ (x - c) is the only preimage and membership reads
 *   ||beta_J||_p <= 1 for all outer groups and ||beta_K||_q > r_K for some inner group.
 */
struct AnnulusForm
{
    Vector c;
    Matrix G;
    std::vector<NormGroup> outer_groups;
    std::vector<NormGroup> inner_groups;
    Matrix pinv;

    /// The unique beta with c + G beta = x, if x lies in the range (within tol).
    std::optional<Vector> preimage(const Vector& x, double tol) const;
    double outer_distance(const Vector& beta) const;
    double inner_distance(const Vector& beta) const;
};

std::optional<AnnulusForm> try_annulus_form(const Rcg& s, double rank_tol = 1e-10);

/**
 * @brief Reduced exclusion equation when generators or centers coincide.
 *
 * SharedGenerators:    G eta = (c_o - c_in) + G beta
 * Concentric:          G_in eta = G_o beta
 * SharedAndConcentric: G eta = G beta
 */
struct CommonGeneratorForm
{
    enum class Kind
    {
        NotApplicable,
        SharedGenerators,
        Concentric,
        SharedAndConcentric
    };

    Kind kind = Kind::NotApplicable;
    Vector offset; ///< c_o - c_in, zero when concentric
    Matrix G_o;

    bool applies() const { return kind != Kind::NotApplicable; }
    /// Right-hand side of the inner equation for an outer coefficient vector.
    Vector exclusion_rhs(const Vector& beta) const;
};

std::string to_string(CommonGeneratorForm::Kind k);

CommonGeneratorForm common_generator_form(const Rcg& s);

/// Concentric ring with shared full-rank generators intersected with a zonotope.
struct ConcentricIntersection
{
    AnnulusForm ring;
    Ccg y;
};

struct RzIntersection
{
    Rcg set;
    std::optional<ConcentricIntersection> concentric;
};

/**
 * @brief Roundabout zonotope intersected with a zonotope.
 *
 * Throws NormError unless every group is an infinity-norm group and neither
 * operand has equality constraints.
 */
RzIntersection rz_intersect_zonotope(const Rcg& s, const Ccg& y, double rank_tol = 1e-10);

} // namespace rcg

#endif
