#ifndef RCG_MEMBERSHIP_HPP_
#define RCG_MEMBERSHIP_HPP_

#include "rcg/feasibility.hpp"
#include "rcg/rcg_ops.hpp"

#include <optional>

namespace rcg
{

/// Which route decided an RCG membership query.
enum class MemberPath
{
    General,   ///< outer and inner feasibility solves on x
    Reduced,   ///< inner right-hand side built from the outer witness (shared G or center)
    Annulus    ///< unique preimage, norm bounds checked directly
};

std::string to_string(MemberPath p);

struct RcgVerdict
{
    Status status = Status::Indeterminate;
    FeasibilityVerdict outer;
    std::optional<FeasibilityVerdict> inner; ///< absent when the outer check already failed
    MemberPath path = MemberPath::General;
};

/**
 * @brief Membership test for an RCG: outer feasible and inner infeasible.
 *
 * The inner set is closed, so points on its boundary are not members.
 * Shortcuts are taken when their preconditions hold unless force_general is set.
 */
class RcgMembership
{
    public:
        explicit RcgMembership(const Rcg& s, SolverConfig cfg = {}, bool force_general = false);

        RcgVerdict test(const Vector& x) const;

        const Rcg& set() const { return set_; }
        const std::optional<AnnulusForm>& annulus() const { return annulus_; }
        const CommonGeneratorForm& common_form() const { return common_; }

    private:
        Rcg set_;
        SolverConfig cfg_;
        bool force_general_;
        CcgMembership outer_;
        FeasibilitySolver inner_;
        std::optional<AnnulusForm> annulus_;
        CommonGeneratorForm common_;
};

RcgVerdict rcg_member(const Vector& x, const Rcg& s, const SolverConfig& cfg = {},
                      bool force_general = false);

/// Membership in either kind of set, reduced to a status and its sub-verdicts.
struct MemberResult
{
    Status status = Status::Indeterminate;
    std::vector<FeasibilityVerdict> solves; ///< every sub-solve that was run
    MemberPath path = MemberPath::General;
};

/// Prepared membership for a CCG or an RCG.
class SetMembership
{
    public:
        SetMembership(const GeneratorSet& s, SolverConfig cfg = {}, bool force_general = false);

        MemberResult test(const Vector& x) const;
        Index dim() const;
        const SolverConfig& config() const { return cfg_; }

    private:
        SolverConfig cfg_;
        std::optional<CcgMembership> ccg_;
        std::optional<RcgMembership> rcg_;
};

} // namespace rcg

#endif
