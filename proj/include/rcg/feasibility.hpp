#ifndef RCG_FEASIBILITY_HPP_
#define RCG_FEASIBILITY_HPP_

/**
 * @file feasibility.hpp
 * @brief Membership and emptiness via convex feasibility.
 *
 * Every question about a CCG reduces to: does some beta satisfy
 *   ||beta_J||_p <= radius_J for all groups J  and  A*beta = b ?
 * The solver runs Dykstra's alternating projections between the affine set
 * and the product of norm balls, both of which have exact projections.
 */

#include "rcg/core.hpp"

#include <optional>

namespace rcg
{

struct SolverConfig
{
    double tol_feas = 1e-7;    ///< residual at or below which the problem is feasible
    double tol_infeas = 1e-6;  ///< certified distance above which the problem is infeasible
    int max_iter = 5000;
    double rank_tol = 1e-10;   ///< singular value cutoff, relative to the largest
};

enum class Status
{
    Feasible,
    Infeasible,
    Indeterminate
};

std::string to_string(Status s);

struct FeasibilityProblem
{
    Matrix affine_A;
    Vector affine_b;
    std::vector<NormGroup> groups;
    Index dim = 0;
};

struct FeasibilityVerdict
{
    Status status = Status::Indeterminate;
    std::optional<Vector> witness;
    double residual = 0.0;
    int iterations = 0;
};

/// Euclidean projection onto { u : ||u||_p <= radius }.
Vector project_ball(const Vector& v, Norm p, double radius);

/**
 * @brief Euclidean projection onto { beta : A*beta = b }.
 *
 * Throws AffineInfeasible when the minimal-norm least-squares solution leaves
 * a residual above tol.
 */
Vector project_affine(const Vector& v, const Matrix& A, const Vector& b, double tol = 1e-7,
                      double rank_tol = 1e-10);

/**
 * @brief Projector onto the affine sets { beta : A*beta = b } for a fixed A.
 *
 * Factorizes A once through an SVD so that repeated right-hand sides cost one
 * matrix-vector product each.
 */
class AffineProjector
{
    public:
        AffineProjector() = default;
        explicit AffineProjector(const Matrix& A, double rank_tol = 1e-10);

        Index dim() const { return nullspace_.rows(); }
        Index rank() const { return rank_; }
        /// Dimension of the solution set (m - rank).
        Index nullity() const { return dim() - rank_; }
        const Matrix& matrix() const { return A_; }
        const Matrix& pseudo_inverse() const { return pinv_; }

        /// Minimal-norm least-squares solution of A*beta = b.
        Vector min_norm_solution(const Vector& b) const;
        /// ||A*beta - b||
        double residual(const Vector& beta, const Vector& b) const;
        /// Projection of v onto { A*beta = b } given base = min_norm_solution(b).
        Vector project(const Vector& v, const Vector& base) const;

    private:
        Matrix A_;
        Matrix pinv_;
        Matrix nullspace_; // I - pinv * A
        Index rank_ = 0;
};

/**
 * @brief Feasibility problem with a fixed equality matrix and varying right-hand side.
 *
 * Deterministic: the iteration starts at the minimal-norm affine solution.
 * Feasible once the residual drops to tol_feas; Infeasible once a separating
 * direction certifies a distance above tol_infeas; Indeterminate at max_iter.
 */
class FeasibilitySolver
{
    public:
        FeasibilitySolver(const Matrix& affine_A, std::vector<NormGroup> groups, Index dim,
                          SolverConfig cfg = {});

        FeasibilityVerdict solve(const Vector& affine_b) const;

        const SolverConfig& config() const { return cfg_; }
        const AffineProjector& affine() const { return affine_; }

        /// Projection onto the product of the group balls.
        Vector project_groups(const Vector& v) const;

    private:
        AffineProjector affine_;
        std::vector<NormGroup> groups_;
        Index dim_;
        SolverConfig cfg_;
};

FeasibilityVerdict solve_feasibility(const FeasibilityProblem& prob, const SolverConfig& cfg = {});

/**
 * @brief Membership test for one CCG, prepared once and reused per point.
 *
 * Equalities are [A; G] beta = [b; x - c].
 */
class CcgMembership
{
    public:
        explicit CcgMembership(const Ccg& s, SolverConfig cfg = {});

        FeasibilityVerdict test(const Vector& x) const;
        const Ccg& set() const { return set_; }

    private:
        Ccg set_;
        FeasibilitySolver solver_;
};

FeasibilityVerdict ccg_member(const Vector& x, const Ccg& s, const SolverConfig& cfg = {});

/// Feasible iff the set is nonempty.
FeasibilityVerdict ccg_empty(const Ccg& s, const SolverConfig& cfg = {});

/// Projection onto the product of group balls (indices outside every group pass through).
Vector project_groups(const Vector& v, const std::vector<NormGroup>& groups);

/// Verdict for a fixed point whose distance to the ball product is known exactly.
FeasibilityVerdict classify_distance(double distance, const Vector& witness, const SolverConfig& cfg);

} // namespace rcg

#endif
