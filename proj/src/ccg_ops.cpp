#include "rcg/ccg_ops.hpp"

namespace rcg
{

namespace
{

std::vector<NormGroup> shifted(const std::vector<NormGroup>& groups, Index offset)
{
    std::vector<NormGroup> out = groups;
    for (NormGroup& g : out)
        for (Index& i : g.indices) i += offset;
    return out;
}

void require_same_dim(const Ccg& s1, const Ccg& s2, const char* op)
{
    if (s1.dim() != s2.dim())
        throw ShapeError(std::string(op) + ": operands live in R^" + std::to_string(s1.dim()) +
                         " and R^" + std::to_string(s2.dim()));
}

} // namespace

Ccg ccg_linear_map(const LinearMap& map, const Ccg& s)
{
    if (map.T.cols() != s.dim())
        throw ShapeError("linear map has " + std::to_string(map.T.cols()) +
                         " columns, set has dimension " + std::to_string(s.dim()));
    Ccg out = s;
    out.c = map.T * s.c;
    out.G = map.T * s.G;
    return out;
}

Ccg ccg_minkowski(const Ccg& s1, const Ccg& s2)
{
    require_same_dim(s1, s2, "minkowski sum");
    const Index n = s1.dim();
    const Index m1 = s1.num_generators(), m2 = s2.num_generators();
    const Index q1 = s1.num_constraints(), q2 = s2.num_constraints();

    Ccg out;
    out.c = s1.c + s2.c;
    out.G.resize(n, m1 + m2);
    out.G << s1.G, s2.G;
    out.groups = s1.groups;
    for (NormGroup& g : shifted(s2.groups, m1)) out.groups.push_back(std::move(g));
    out.A = Matrix::Zero(q1 + q2, m1 + m2);
    out.A.topLeftCorner(q1, m1) = s1.A;
    out.A.bottomRightCorner(q2, m2) = s2.A;
    out.b.resize(q1 + q2);
    out.b << s1.b, s2.b;
    return out;
}

Ccg ccg_intersect(const Ccg& s1, const Ccg& s2)
{
    require_same_dim(s1, s2, "intersection");
    const Index n = s1.dim();
    const Index m1 = s1.num_generators(), m2 = s2.num_generators();
    const Index q1 = s1.num_constraints(), q2 = s2.num_constraints();

    Ccg out;
    out.c = s1.c;
    out.G = Matrix::Zero(n, m1 + m2);
    out.G.leftCols(m1) = s1.G;
    out.groups = s1.groups;
    for (NormGroup& g : shifted(s2.groups, m1)) out.groups.push_back(std::move(g));

    out.A = Matrix::Zero(q1 + q2 + n, m1 + m2);
    out.A.block(0, 0, q1, m1) = s1.A;
    out.A.block(q1, m1, q2, m2) = s2.A;
    out.A.block(q1 + q2, 0, n, m1) = s1.G;
    out.A.block(q1 + q2, m1, n, m2) = -s2.G;
    out.b.resize(q1 + q2 + n);
    out.b << s1.b, s2.b, s2.c - s1.c;
    return out;
}

SupportBound support_upper_bound(const Vector& h, const Ccg& s)
{
    if (h.size() != s.dim()) throw ShapeError("support direction has the wrong dimension");
    SupportBound sb;
    sb.value = h.dot(s.c) + (h.transpose() * s.G).cwiseAbs().sum();
    return sb;
}

double halfspace_slack(const Ccg& s, const Halfspace& hs)
{
    if (hs.h.size() != s.dim()) throw ShapeError("halfspace normal has the wrong dimension");
    return hs.f - hs.h.dot(s.c) + (hs.h.transpose() * s.G).cwiseAbs().sum();
}

HalfspaceCut ccg_halfspace(const Ccg& s, const Halfspace& hs)
{
    HalfspaceCut cut;
    cut.d_max = halfspace_slack(s, hs);
    if (cut.d_max < 0.0)
    {
        cut.result = EmptySet{};
        return cut;
    }

    const Index n = s.dim();
    const Index m = s.num_generators();
    const Index q = s.num_constraints();

    Ccg out;
    out.c = s.c;
    out.G = Matrix::Zero(n, m + 1);
    out.G.leftCols(m) = s.G;
    out.groups = s.groups;
    out.groups.push_back(NormGroup{{m}, Norm::Inf, 1.0});
    out.A = Matrix::Zero(q + 1, m + 1);
    out.A.topLeftCorner(q, m) = s.A;
    out.A.block(q, 0, 1, m) = hs.h.transpose() * s.G;
    out.A(q, m) = cut.d_max / 2.0;
    out.b.resize(q + 1);
    out.b.head(q) = s.b;
    out.b(q) = hs.f - hs.h.dot(s.c) - cut.d_max / 2.0;
    cut.result = std::move(out);
    return cut;
}

} // namespace rcg
