#include "rcg/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rcg
{

std::string to_string(Norm p)
{
    switch (p)
    {
        case Norm::L1: return "1";
        case Norm::L2: return "2";
        case Norm::Inf: return "inf";
    }
    return "?";
}

Norm norm_from_string(const std::string& s)
{
    if (s == "1") return Norm::L1;
    if (s == "2") return Norm::L2;
    if (s == "inf") return Norm::Inf;
    throw NormError("norm selector '" + s + "' is not one of 1, 2, inf");
}

double norm_value(const Vector& v, Norm p)
{
    if (v.size() == 0) return 0.0;
    switch (p)
    {
        case Norm::L1: return v.lpNorm<1>();
        case Norm::L2: return v.norm();
        case Norm::Inf: return v.lpNorm<Eigen::Infinity>();
    }
    return 0.0;
}

namespace
{

bool same_matrix(const Matrix& a, const Matrix& b)
{
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool same_vector(const Vector& a, const Vector& b)
{
    return a.size() == b.size() && a == b;
}

std::string shape(const Matrix& m)
{
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

} // namespace

bool operator==(const Ccg& lhs, const Ccg& rhs)
{
    return same_vector(lhs.c, rhs.c) && same_matrix(lhs.G, rhs.G) && lhs.groups == rhs.groups &&
           same_matrix(lhs.A, rhs.A) && same_vector(lhs.b, rhs.b);
}

bool operator==(const Rcg& lhs, const Rcg& rhs)
{
    return lhs.outer == rhs.outer && lhs.inner == rhs.inner;
}

bool operator==(const Halfspace& lhs, const Halfspace& rhs)
{
    return same_vector(lhs.h, rhs.h) && lhs.f == rhs.f;
}

Ccg make_ccg(const Vector& c, const Matrix& G, Norm p, double radius)
{
    Ccg s;
    s.c = c;
    s.G = G;
    if (G.cols() > 0)
    {
        NormGroup g;
        g.p = p;
        g.radius = radius;
        for (Index j = 0; j < G.cols(); ++j) g.indices.push_back(j);
        s.groups.push_back(std::move(g));
    }
    s.A.resize(0, G.cols());
    s.b.resize(0);
    return s;
}

Ccg with_constraints(Ccg s, const Matrix& A, const Vector& b)
{
    s.A = A;
    s.b = b;
    return s;
}

Ccg make_point(const Vector& c)
{
    return make_ccg(c, Matrix(c.size(), 0), Norm::Inf);
}

Ccg validate_ccg(Ccg raw)
{
    const Index n = raw.c.size();
    const Index m = raw.G.cols();

    if (raw.G.rows() != n)
        throw ShapeError("G has " + std::to_string(raw.G.rows()) + " rows but c has length " +
                         std::to_string(n));
    if (raw.A.cols() != m)
    {
        // an empty constraint block may arrive without a column count
        if (raw.A.rows() == 0)
            raw.A.resize(0, m);
        else
            throw ShapeError("A is " + shape(raw.A) + " but G has " + std::to_string(m) +
                             " columns");
    }
    if (raw.A.rows() != raw.b.size())
        throw ShapeError("A has " + std::to_string(raw.A.rows()) + " rows but b has length " +
                         std::to_string(raw.b.size()));
    if (!raw.c.allFinite() || !raw.G.allFinite() || !raw.A.allFinite() || !raw.b.allFinite())
        throw ShapeError("non-finite entry in c, G, A or b");

    std::vector<int> seen(static_cast<std::size_t>(m), 0);
    for (const NormGroup& g : raw.groups)
    {
        if (g.indices.empty()) throw PartitionError("empty norm group");
        for (std::size_t k = 0; k < g.indices.size(); ++k)
        {
            const Index j = g.indices[k];
            if (j < 0 || j >= m)
                throw PartitionError("group index " + std::to_string(j + 1) +
                                     " outside [1, " + std::to_string(m) + "]");
            if (k > 0 && g.indices[k - 1] >= j)
                throw PartitionError("group indices must be strictly increasing");
            if (seen[static_cast<std::size_t>(j)]++)
                throw PartitionError("index " + std::to_string(j + 1) +
                                     " appears in more than one group");
        }
        if (!(g.radius >= 0.0 && g.radius <= 1.0))
            throw RadiusError("group radius " + std::to_string(g.radius) + " outside [0, 1]");
    }
    for (Index j = 0; j < m; ++j)
        if (!seen[static_cast<std::size_t>(j)])
            throw PartitionError("index " + std::to_string(j + 1) + " is not covered by any group");

    return raw;
}

Rcg validate_rcg(Rcg raw)
{
    raw.outer = validate_ccg(std::move(raw.outer));
    raw.inner = validate_ccg(std::move(raw.inner));
    if (raw.outer.dim() != raw.inner.dim())
        throw ShapeError("outer dimension " + std::to_string(raw.outer.dim()) +
                         " differs from inner dimension " + std::to_string(raw.inner.dim()));
    for (const NormGroup& g : raw.inner.groups)
        if (!(g.radius >= 0.0 && g.radius < 1.0))
            throw RadiusError("inner radius " + std::to_string(g.radius) + " outside [0, 1)");
    return raw;
}

Halfspace validate_halfspace(Halfspace raw)
{
    if (raw.h.size() == 0) throw ShapeError("halfspace normal is empty");
    if (!raw.h.allFinite() || !std::isfinite(raw.f)) throw ShapeError("non-finite halfspace data");
    if (raw.h.isZero(0.0)) throw ShapeError("halfspace normal is the zero vector");
    return raw;
}

} // namespace rcg
