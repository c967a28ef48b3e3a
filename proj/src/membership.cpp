#include "rcg/membership.hpp"

#include <limits>

namespace rcg
{

std::string to_string(MemberPath p)
{
    switch (p)
    {
        case MemberPath::General: return "general";
        case MemberPath::Reduced: return "reduced";
        case MemberPath::Annulus: return "annulus";
    }
    return "?";
}

namespace
{

Matrix inner_rows(const Ccg& inner)
{
    Matrix m(inner.num_constraints() + inner.dim(), inner.num_generators());
    if (inner.num_constraints() > 0) m.topRows(inner.num_constraints()) = inner.A;
    if (inner.dim() > 0) m.bottomRows(inner.dim()) = inner.G;
    return m;
}

Status combine(const FeasibilityVerdict& outer, const std::optional<FeasibilityVerdict>& inner)
{
    if (outer.status == Status::Infeasible) return Status::Infeasible;
    if (inner && inner->status == Status::Feasible) return Status::Infeasible;
    if (outer.status == Status::Indeterminate) return Status::Indeterminate;
    if (!inner || inner->status == Status::Indeterminate) return Status::Indeterminate;
    return Status::Feasible;
}

} // namespace

RcgMembership::RcgMembership(const Rcg& s, SolverConfig cfg, bool force_general)
    : set_(s),
      cfg_(cfg),
      force_general_(force_general),
      outer_(s.outer, cfg),
      inner_(inner_rows(s.inner), s.inner.groups, s.inner.num_generators(), cfg),
      annulus_(try_annulus_form(s, cfg.rank_tol)),
      common_(common_generator_form(s))
{
}

RcgVerdict RcgMembership::test(const Vector& x) const
{
    if (x.size() != set_.dim())
        throw ShapeError("point has dimension " + std::to_string(x.size()) + ", set has " +
                         std::to_string(set_.dim()));
    RcgVerdict v;

    if (annulus_ && !force_general_)
    {
        v.path = MemberPath::Annulus;
        const auto beta = annulus_->preimage(x, cfg_.tol_feas);
        if (!beta)
        {
            v.outer.status = Status::Infeasible;
            v.outer.residual = std::numeric_limits<double>::infinity();
            v.status = Status::Infeasible;
            return v;
        }
        v.outer = classify_distance(annulus_->outer_distance(*beta), *beta, cfg_);
        if (v.outer.status != Status::Infeasible)
            v.inner = classify_distance(annulus_->inner_distance(*beta), *beta, cfg_);
        v.status = combine(v.outer, v.inner);
        return v;
    }

    v.outer = outer_.test(x);
    if (v.outer.status == Status::Infeasible)
    {
        v.status = Status::Infeasible;
        return v;
    }

    const Ccg& in = set_.inner;
    Vector rhs(in.num_constraints() + in.dim());
    rhs.head(in.num_constraints()) = in.b;
    if (common_.applies() && v.outer.witness && !force_general_)
    {
        v.path = MemberPath::Reduced;
        rhs.tail(in.dim()) = common_.exclusion_rhs(*v.outer.witness);
    }
    else
    {
        rhs.tail(in.dim()) = x - in.c;
    }
    v.inner = inner_.solve(rhs);
    v.status = combine(v.outer, v.inner);
    return v;
}

RcgVerdict rcg_member(const Vector& x, const Rcg& s, const SolverConfig& cfg, bool force_general)
{
    return RcgMembership(s, cfg, force_general).test(x);
}

SetMembership::SetMembership(const GeneratorSet& s, SolverConfig cfg, bool force_general) : cfg_(cfg)
{
    if (const auto* c = std::get_if<Ccg>(&s))
        ccg_.emplace(*c, cfg);
    else
        rcg_.emplace(std::get<Rcg>(s), cfg, force_general);
}

MemberResult SetMembership::test(const Vector& x) const
{
    MemberResult r;
    if (ccg_)
    {
        FeasibilityVerdict v = ccg_->test(x);
        r.status = v.status;
        r.solves.push_back(std::move(v));
        return r;
    }
    RcgVerdict v = rcg_->test(x);
    r.status = v.status;
    r.path = v.path;
    r.solves.push_back(std::move(v.outer));
    if (v.inner) r.solves.push_back(std::move(*v.inner));
    return r;
}

Index SetMembership::dim() const
{
    return ccg_ ? ccg_->set().dim() : rcg_->set().dim();
}

} // namespace rcg
