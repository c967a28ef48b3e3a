#include "rcg/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rcg
{

std::string to_string(Status s)
{
    switch (s)
    {
        case Status::Feasible: return "Feasible";
        case Status::Infeasible: return "Infeasible";
        case Status::Indeterminate: return "Indeterminate";
    }
    return "?";
}

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sorted-threshold projection onto the l1 ball.
template <typename V>
void project_l1_inplace(V&& v, double radius)
{
    const Index k = v.size();
    if (v.template lpNorm<1>() <= radius) return;
    if (radius <= 0.0)
    {
        v.setZero();
        return;
    }
    std::vector<double> u(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) u[static_cast<std::size_t>(i)] = std::abs(v(i));
    std::sort(u.begin(), u.end(), std::greater<double>());

    double cumsum = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
    {
        cumsum += u[j];
        const double t = (cumsum - radius) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) theta = t;
    }
    for (Index i = 0; i < k; ++i)
    {
        const double a = std::max(std::abs(v(i)) - theta, 0.0);
        v(i) = std::copysign(a, v(i));
    }
}

template <typename V>
void project_ball_inplace(V&& v, Norm p, double radius)
{
    switch (p)
    {
        case Norm::Inf:
            v = v.cwiseMax(-radius).cwiseMin(radius);
            break;
        case Norm::L2:
        {
            const double n = v.norm();
            if (n > radius)
            {
                if (radius <= 0.0)
                    v.setZero();
                else
                    v *= radius / n;
            }
            break;
        }
        case Norm::L1:
            project_l1_inplace(v, radius);
            break;
    }
}

bool contiguous(const NormGroup& g)
{
    return g.indices.back() - g.indices.front() + 1 == static_cast<Index>(g.indices.size());
}

void project_groups_inplace(Vector& v, const std::vector<NormGroup>& groups)
{
    for (const NormGroup& g : groups)
    {
        const Index k = static_cast<Index>(g.indices.size());
        if (contiguous(g))
        {
            project_ball_inplace(v.segment(g.indices.front(), k), g.p, g.radius);
        }
        else
        {
            Vector sub(k);
            for (Index i = 0; i < k; ++i) sub(i) = v(g.indices[static_cast<std::size_t>(i)]);
            project_ball_inplace(sub, g.p, g.radius);
            for (Index i = 0; i < k; ++i) v(g.indices[static_cast<std::size_t>(i)]) = sub(i);
        }
    }
}

double dual_norm(const Vector& w, Norm p)
{
    switch (p)
    {
        case Norm::L1: return w.lpNorm<Eigen::Infinity>();
        case Norm::L2: return w.norm();
        case Norm::Inf: return w.lpNorm<1>();
    }
    return kInf;
}

// w = y - x with x the affine projection of y lies in the row space, so w.beta
// is constant on the affine set. Returns the gap between that level and the
// lowest value of w over the balls, over |w|: a lower bound on the distance.
double separation(const Vector& w, const Vector& x, const std::vector<NormGroup>& groups)
{
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    double support = 0.0;
    for (const NormGroup& g : groups)
    {
        Vector sub(static_cast<Index>(g.indices.size()));
        for (std::size_t i = 0; i < g.indices.size(); ++i) sub(static_cast<Index>(i)) = w(g.indices[i]);
        support += g.radius * dual_norm(sub, g.p);
    }
    return (-support - w.dot(x)) / wn;
}

FeasibilityVerdict affine_infeasible(int iterations)
{
    FeasibilityVerdict v;
    v.status = Status::Infeasible;
    v.residual = kInf;
    v.iterations = iterations;
    return v;
}

Matrix stack_rows(const Matrix& top, const Matrix& bottom)
{
    Matrix m(top.rows() + bottom.rows(), top.cols());
    if (top.rows() > 0) m.topRows(top.rows()) = top;
    if (bottom.rows() > 0) m.bottomRows(bottom.rows()) = bottom;
    return m;
}

} // namespace

Vector project_ball(const Vector& v, Norm p, double radius)
{
    Vector out = v;
    project_ball_inplace(out, p, std::max(radius, 0.0));
    return out;
}

Vector project_groups(const Vector& v, const std::vector<NormGroup>& groups)
{
    Vector out = v;
    project_groups_inplace(out, groups);
    return out;
}

FeasibilityVerdict classify_distance(double distance, const Vector& witness, const SolverConfig& cfg)
{
    FeasibilityVerdict v;
    v.residual = distance;
    v.iterations = 1;
    if (distance <= cfg.tol_feas)
    {
        v.status = Status::Feasible;
        v.witness = witness;
    }
    else if (distance > cfg.tol_infeas)
    {
        v.status = Status::Infeasible;
    }
    else
    {
        v.status = Status::Indeterminate;
    }
    return v;
}

// AffineProjector

AffineProjector::AffineProjector(const Matrix& A, double rank_tol) : A_(A)
{
    const Index m = A.cols();
    pinv_ = Matrix::Zero(m, A.rows());
    nullspace_ = Matrix::Identity(m, m);
    rank_ = 0;
    if (A.rows() == 0 || m == 0) return;

    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) <= 0.0) return;
    const double cutoff = rank_tol * sigma(0);
    while (rank_ < sigma.size() && sigma(rank_) > cutoff) ++rank_;

    const Matrix Vr = svd.matrixV().leftCols(rank_);
    const Matrix Ur = svd.matrixU().leftCols(rank_);
    pinv_ = Vr * sigma.head(rank_).cwiseInverse().asDiagonal() * Ur.transpose();
    nullspace_ -= Vr * Vr.transpose();
}

Vector AffineProjector::min_norm_solution(const Vector& b) const
{
    return pinv_ * b;
}

double AffineProjector::residual(const Vector& beta, const Vector& b) const
{
    if (A_.rows() == 0) return 0.0;
    return (A_ * beta - b).norm();
}

Vector AffineProjector::project(const Vector& v, const Vector& base) const
{
    return nullspace_ * v + base;
}

Vector project_affine(const Vector& v, const Matrix& A, const Vector& b, double tol, double rank_tol)
{
    if (A.cols() != v.size() || A.rows() != b.size())
        throw ShapeError("project_affine: A, b and v disagree in shape");
    if (A.rows() == 0) return v;
    const AffineProjector proj(A, rank_tol);
    const Vector base = proj.min_norm_solution(b);
    const double res = proj.residual(base, b);
    if (res > tol)
        throw AffineInfeasible("equality system has no solution (least-squares residual " +
                               std::to_string(res) + ")");
    return proj.project(v, base);
}

// FeasibilitySolver

FeasibilitySolver::FeasibilitySolver(const Matrix& affine_A, std::vector<NormGroup> groups,
                                     Index dim, SolverConfig cfg)
    : affine_(affine_A, cfg.rank_tol), groups_(std::move(groups)), dim_(dim), cfg_(cfg)
{
    if (affine_A.cols() != dim) throw ShapeError("affine matrix column count differs from dim");
}

Vector FeasibilitySolver::project_groups(const Vector& v) const
{
    return rcg::project_groups(v, groups_);
}

FeasibilityVerdict FeasibilitySolver::solve(const Vector& affine_b) const
{
    if (affine_b.size() != affine_.matrix().rows())
        throw ShapeError("right-hand side length differs from the equality row count");

    const Vector base = affine_.min_norm_solution(affine_b);
    if (affine_.residual(base, affine_b) > cfg_.tol_feas) return affine_infeasible(0);
    if (dim_ == 0) return classify_distance(0.0, base, cfg_);

    // a single affine point: the distance to the balls decides
    if (affine_.nullity() == 0)
    {
        Vector y = base;
        project_groups_inplace(y, groups_);
        return classify_distance((base - y).norm(), base, cfg_);
    }

    // Dykstra. The affine step needs no correction term: its correction lies in
    // the row space of A, which the projector annihilates.
    Vector x = base;
    Vector p = Vector::Zero(dim_);
    Vector y(dim_);
    Vector z(dim_);

    FeasibilityVerdict verdict;
    double r = kInf;
    for (int k = 1; k <= cfg_.max_iter; ++k)
    {
        z = x + p;
        y = z;
        project_groups_inplace(y, groups_);
        p = z - y;
        x = affine_.project(y, base);
        r = (y - x).norm();

        if (r <= cfg_.tol_feas)
        {
            verdict.status = Status::Feasible;
            verdict.witness = x;
            verdict.residual = r;
            verdict.iterations = k;
            return verdict;
        }
        // The residual alone can sit flat for hundreds of sweeps on polyhedral
        // faces and then drop, so infeasibility needs a separating direction.
        if (separation(y - x, x, groups_) > cfg_.tol_infeas)
        {
            verdict.status = Status::Infeasible;
            verdict.residual = r;
            verdict.iterations = k;
            return verdict;
        }
    }
    verdict.status = Status::Indeterminate;
    verdict.residual = r;
    verdict.iterations = cfg_.max_iter;
    return verdict;
}

FeasibilityVerdict solve_feasibility(const FeasibilityProblem& prob, const SolverConfig& cfg)
{
    if (prob.affine_A.rows() != prob.affine_b.size())
        throw ShapeError("affine_A and affine_b row counts differ");
    const FeasibilitySolver solver(prob.affine_A, prob.groups, prob.dim, cfg);
    return solver.solve(prob.affine_b);
}

// CcgMembership

CcgMembership::CcgMembership(const Ccg& s, SolverConfig cfg)
    : set_(s), solver_(stack_rows(s.A, s.G), s.groups, s.num_generators(), cfg)
{
}

FeasibilityVerdict CcgMembership::test(const Vector& x) const
{
    if (x.size() != set_.dim())
        throw ShapeError("point has dimension " + std::to_string(x.size()) + ", set has " +
                         std::to_string(set_.dim()));
    Vector rhs(set_.num_constraints() + set_.dim());
    rhs.head(set_.num_constraints()) = set_.b;
    rhs.tail(set_.dim()) = x - set_.c;
    return solver_.solve(rhs);
}

FeasibilityVerdict ccg_member(const Vector& x, const Ccg& s, const SolverConfig& cfg)
{
    return CcgMembership(s, cfg).test(x);
}

FeasibilityVerdict ccg_empty(const Ccg& s, const SolverConfig& cfg)
{
    const FeasibilitySolver solver(s.A, s.groups, s.num_generators(), cfg);
    return solver.solve(s.b);
}

} // namespace rcg
