#ifndef RCG_CORE_HPP_
#define RCG_CORE_HPP_

/**
 * @file core.hpp
 * @brief Domain types for constrained convex generators (CCG) and
 * roundabout constrained convex generators (RCG).
 *
 * A CCG is the set
 *   { c + G*beta | ||beta_J||_p <= radius for every group J, A*beta = b }.
 * An RCG is an outer CCG minus an inner CCG whose groups carry radii in [0,1).
 *
 * Group indices are stored 0-based. The JSON format uses 1-based indices.
 */

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rcg
{

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// errors

class Error : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

/// Groups are not a partition of {1..m}.
class PartitionError : public Error { public: using Error::Error; };
/// Dimension mismatch between fields or operands.
class ShapeError : public Error { public: using Error::Error; };
/// Norm selector outside {1, 2, inf}, or a norm not allowed by a specialization.
class NormError : public Error { public: using Error::Error; };
/// Group radius outside its admissible range.
class RadiusError : public Error { public: using Error::Error; };
/// Malformed JSON, unknown kind or unknown key.
class ParseError : public Error { public: using Error::Error; };
/// The equality system A*beta = b has no solution.
class AffineInfeasible : public Error { public: using Error::Error; };
/// Operation requires a specific ambient dimension.
class DimensionError : public Error { public: using Error::Error; };
/// Operation leaves the single-hole RCG class.
class UnsupportedOperation : public Error { public: using Error::Error; };
/// Rejection sampling acceptance rate fell below its floor.
class SamplingExhausted : public Error { public: using Error::Error; };

// types

enum class Norm
{
    L1,
    L2,
    Inf
};

std::string to_string(Norm p);

/// Parses "1", "2" or "inf". Throws NormError otherwise.
Norm norm_from_string(const std::string& s);

/// Value of ||v||_p.
double norm_value(const Vector& v, Norm p);

struct NormGroup
{
    std::vector<Index> indices; // 0-based, strictly increasing
    Norm p = Norm::Inf;
    double radius = 1.0;

    bool operator==(const NormGroup&) const = default;
};

/**
 * @brief Constrained convex generator <c, G, groups, A, b>.
 *
 * An empty equality system is stored as a 0 x m matrix and a length-0 vector.
 */
struct Ccg
{
    Vector c;
    Matrix G;
    std::vector<NormGroup> groups;
    Matrix A;
    Vector b;

    Index dim() const { return c.size(); }
    Index num_generators() const { return G.cols(); }
    Index num_constraints() const { return A.rows(); }
};

bool operator==(const Ccg& lhs, const Ccg& rhs);

/// Outer CCG minus inner CCG. The inner group radii are the scale factors r_j.
struct Rcg
{
    Ccg outer;
    Ccg inner;

    Index dim() const { return outer.dim(); }
};

bool operator==(const Rcg& lhs, const Rcg& rhs);

/// { x : h^T x <= f }
struct Halfspace
{
    Vector h;
    double f = 0.0;
};

bool operator==(const Halfspace& lhs, const Halfspace& rhs);

struct EmptySet {};

/// Result of intersecting a CCG with a halfspace.
struct HalfspaceCut
{
    double d_max = 0.0;
    std::variant<EmptySet, Ccg> result;

    bool is_empty() const { return std::holds_alternative<EmptySet>(result); }
};

/// Linear map x -> T*x.
struct LinearMap
{
    Matrix T;
};

using SetValue = std::variant<Ccg, Rcg, Halfspace>;

// construction helpers

/// Ccg with a single group over all generators and no equality constraints.
Ccg make_ccg(const Vector& c, const Matrix& G, Norm p, double radius = 1.0);

/// Adds equality constraints to a Ccg.
Ccg with_constraints(Ccg s, const Matrix& A, const Vector& b);

/// The single point {c} in R^n (no generators).
Ccg make_point(const Vector& c);

// validation

/**
 * @brief Checks all Ccg invariants and returns the value unchanged.
 *
 * Throws PartitionError, ShapeError or RadiusError.
 */
Ccg validate_ccg(Ccg raw);

/**
 * @brief Validates both members, equal ambient dimension and inner radii in [0,1).
 */
Rcg validate_rcg(Rcg raw);

Halfspace validate_halfspace(Halfspace raw);

} // namespace rcg

#endif
