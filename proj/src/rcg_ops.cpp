#include "rcg/rcg_ops.hpp"

#include "rcg/ccg_ops.hpp"
#include "rcg/feasibility.hpp"

namespace rcg
{

namespace
{

void require_norm(const Ccg& s, Norm p, const char* what)
{
    for (const NormGroup& g : s.groups)
        if (g.p != p)
            throw NormError(std::string(what) + " requires every group to use the " +
                            to_string(p) + "-norm, found " + to_string(g.p));
}

void require_same_dim(Index a, Index b, const char* op)
{
    if (a != b)
        throw ShapeError(std::string(op) + ": operands live in R^" + std::to_string(a) + " and R^" +
                         std::to_string(b));
}

bool same(const Matrix& a, const Matrix& b)
{
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

} // namespace

Rcg rcg_from_difference(const Ccg& outer, const Ccg& inner)
{
    return validate_rcg(Rcg{outer, inner});
}

Rcg rcg_linear_map(const LinearMap& map, const Rcg& s)
{
    return Rcg{ccg_linear_map(map, s.outer), ccg_linear_map(map, s.inner)};
}

Rcg rcg_minkowski_ccg(const Rcg& s, const Ccg& t)
{
    require_same_dim(s.dim(), t.dim(), "minkowski sum");
    return Rcg{ccg_minkowski(s.outer, t), s.inner};
}

Rcg rcg_intersect_ccg(const Rcg& s, const Ccg& t)
{
    require_same_dim(s.dim(), t.dim(), "intersection");
    return Rcg{ccg_intersect(s.outer, t), s.inner};
}

GeneratorSet set_minkowski(const GeneratorSet& a, const GeneratorSet& b)
{
    const auto* ca = std::get_if<Ccg>(&a);
    const auto* cb = std::get_if<Ccg>(&b);
    if (ca && cb) return ccg_minkowski(*ca, *cb);
    if (cb) return rcg_minkowski_ccg(std::get<Rcg>(a), *cb);
    if (ca) return rcg_minkowski_ccg(std::get<Rcg>(b), *ca);
    throw UnsupportedOperation(
        "minkowski sum of two RCGs: the result may have several holes and does not stay "
        "within the single-hole RCG class");
}

GeneratorSet set_intersect(const GeneratorSet& a, const GeneratorSet& b)
{
    const auto* ca = std::get_if<Ccg>(&a);
    const auto* cb = std::get_if<Ccg>(&b);
    if (ca && cb) return ccg_intersect(*ca, *cb);
    if (cb) return rcg_intersect_ccg(std::get<Rcg>(a), *cb);
    if (ca) return rcg_intersect_ccg(std::get<Rcg>(b), *ca);
    throw UnsupportedOperation(
        "intersection of two RCGs: the result may have several holes and does not stay "
        "within the single-hole RCG class");
}

GeneratorSet set_linear_map(const LinearMap& map, const GeneratorSet& s)
{
    if (const auto* c = std::get_if<Ccg>(&s)) return ccg_linear_map(map, *c);
    return rcg_linear_map(map, std::get<Rcg>(s));
}

Rcg make_roundabout_ellipsotope(const Ccg& outer, const Ccg& inner)
{
    require_norm(outer, Norm::L2, "roundabout ellipsotope");
    require_norm(inner, Norm::L2, "roundabout ellipsotope");
    return rcg_from_difference(outer, inner);
}

Rcg make_roundabout_constrained_zonotope(const Ccg& outer, const Ccg& inner)
{
    require_norm(outer, Norm::Inf, "roundabout constrained zonotope");
    require_norm(inner, Norm::Inf, "roundabout constrained zonotope");
    return rcg_from_difference(outer, inner);
}

Rcg make_roundabout_zonotope(const Vector& c_o, const Matrix& G_o, const Vector& c_in,
                             const Matrix& G_in, const Vector& r)
{
    for (Index i = 0; i < r.size(); ++i)
        if (!(r(i) >= 0.0 && r(i) < 1.0))
            throw RadiusError("roundabout zonotope radius " + std::to_string(r(i)) +
                              " outside [0, 1)");

    const Ccg outer = make_ccg(c_o, G_o, Norm::Inf);
    const Index m = G_in.cols();
    Ccg inner = make_ccg(c_in, G_in, Norm::Inf, r.size() > 0 ? r(0) : 0.0);
    const bool single_group = r.size() == 1 && m > 0;
    if (!single_group)
    {
        if (r.size() != m)
            throw ShapeError("roundabout zonotope expects one radius or one per inner generator, got " +
                             std::to_string(r.size()));
        inner.groups.clear();
        for (Index j = 0; j < m; ++j) inner.groups.push_back(NormGroup{{j}, Norm::Inf, r(j)});
    }
    return rcg_from_difference(outer, inner);
}

Ccg absorb_radii(const Ccg& s)
{
    Ccg out = s;
    for (NormGroup& g : out.groups)
    {
        for (Index j : g.indices)
        {
            out.G.col(j) *= g.radius;
            if (out.A.rows() > 0) out.A.col(j) *= g.radius;
        }
        g.radius = 1.0;
    }
    return out;
}

// AnnulusForm

std::optional<Vector> AnnulusForm::preimage(const Vector& x, double tol) const
{
    const Vector d = x - c;
    Vector beta = pinv * d;
    if ((G * beta - d).norm() > tol) return std::nullopt;
    return beta;
}

double AnnulusForm::outer_distance(const Vector& beta) const
{
    return (beta - project_groups(beta, outer_groups)).norm();
}

double AnnulusForm::inner_distance(const Vector& beta) const
{
    return (beta - project_groups(beta, inner_groups)).norm();
}

std::optional<AnnulusForm> try_annulus_form(const Rcg& s, double rank_tol)
{
    const Ccg& o = s.outer;
    const Ccg& in = s.inner;
    if (o.c != in.c || !same(o.G, in.G)) return std::nullopt;
    if (o.num_constraints() > 0 || in.num_constraints() > 0) return std::nullopt;
    const Index m = o.num_generators();
    if (m == 0 || m > o.dim()) return std::nullopt;

    const AffineProjector proj(o.G, rank_tol);
    if (proj.rank() != m) return std::nullopt;

    AnnulusForm form;
    form.c = o.c;
    form.G = o.G;
    form.outer_groups = o.groups;
    form.inner_groups = in.groups;
    form.pinv = proj.pseudo_inverse();
    return form;
}

// CommonGeneratorForm

Vector CommonGeneratorForm::exclusion_rhs(const Vector& beta) const
{
    return offset + G_o * beta;
}

std::string to_string(CommonGeneratorForm::Kind k)
{
    using K = CommonGeneratorForm::Kind;
    switch (k)
    {
        case K::NotApplicable: return "not-applicable";
        case K::SharedGenerators: return "shared-generators";
        case K::Concentric: return "concentric";
        case K::SharedAndConcentric: return "shared-and-concentric";
    }
    return "?";
}

CommonGeneratorForm common_generator_form(const Rcg& s)
{
    using K = CommonGeneratorForm::Kind;
    CommonGeneratorForm form;
    const bool shared = same(s.outer.G, s.inner.G);
    const bool concentric = s.outer.c == s.inner.c;
    if (shared && concentric)
        form.kind = K::SharedAndConcentric;
    else if (shared)
        form.kind = K::SharedGenerators;
    else if (concentric)
        form.kind = K::Concentric;
    else
        return form;
    form.offset = s.outer.c - s.inner.c;
    form.G_o = s.outer.G;
    return form;
}

RzIntersection rz_intersect_zonotope(const Rcg& s, const Ccg& y, double rank_tol)
{
    require_norm(s.outer, Norm::Inf, "roundabout zonotope intersection");
    require_norm(s.inner, Norm::Inf, "roundabout zonotope intersection");
    require_norm(y, Norm::Inf, "roundabout zonotope intersection");
    if (s.outer.num_constraints() > 0 || s.inner.num_constraints() > 0 || y.num_constraints() > 0)
        throw NormError("roundabout zonotope intersection requires operands without equality constraints");

    RzIntersection out;
    out.set = rcg_intersect_ccg(s, y);
    if (auto ring = try_annulus_form(s, rank_tol)) out.concentric = ConcentricIntersection{*ring, y};
    return out;
}

} // namespace rcg
