#ifndef RCG_ORACLE_HPP_
#define RCG_ORACLE_HPP_

/**
 * @file oracle.hpp
 * @brief Brute-force ground truth: planar membership rasters and parameter sampling.
 */

#include "rcg/membership.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace rcg
{

struct BBox
{
    double xmin = 0.0;
    double xmax = 1.0;
    double ymin = 0.0;
    double ymax = 1.0;

    bool operator==(const BBox&) const = default;
};

enum class CellState : std::uint8_t
{
    Out = 0,
    In = 1,
    Band = 2 ///< a solve ended within tolerance of its decision threshold
};

/**
 * @brief nx x ny membership grid over a box, evaluated at cell centers.
 *
 * Cell (i, j) has center (xmin + (i + 0.5) dx, ymin + (j + 0.5) dy); j = 0 is the bottom row.
 */
class RasterGrid
{
    public:
        RasterGrid() = default;
        RasterGrid(const BBox& bbox, int nx, int ny);

        const BBox& bbox() const { return bbox_; }
        int nx() const { return nx_; }
        int ny() const { return ny_; }

        CellState at(int i, int j) const { return cells_[index(i, j)]; }
        void set(int i, int j, CellState s) { cells_[index(i, j)] = s; }
        bool member(int i, int j) const { return at(i, j) == CellState::In; }
        bool band(int i, int j) const { return at(i, j) == CellState::Band; }

        Eigen::Vector2d cell_center(int i, int j) const;
        double cell_width() const { return (bbox_.xmax - bbox_.xmin) / nx_; }
        double cell_height() const { return (bbox_.ymax - bbox_.ymin) / ny_; }

        std::size_t filled_count() const;
        std::size_t band_count() const;
        /// filled cells / all cells
        double filled_fraction() const;

        const std::vector<CellState>& cells() const { return cells_; }
        bool same_shape(const RasterGrid& other) const;

        bool operator==(const RasterGrid& other) const = default;

    private:
        std::size_t index(int i, int j) const
        {
            return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) +
                   static_cast<std::size_t>(i);
        }

        BBox bbox_;
        int nx_ = 0;
        int ny_ = 0;
        std::vector<CellState> cells_;
};

/**
 * @brief Cell state of one membership query.
 *
 * Band when any sub-solve is Indeterminate or was found Infeasible with a
 * residual at most tol_infeas + 10 tol_feas.
 */
CellState cell_state(const MemberResult& r, const SolverConfig& cfg);

using CellPredicate = std::function<CellState(const Eigen::Vector2d&)>;

/// Evaluates a thread-safe predicate at every cell center. Rows may run in parallel.
RasterGrid raster_predicate(const BBox& bbox, int nx, int ny, const CellPredicate& pred);

/// Throws DimensionError unless the set lives in R^2.
RasterGrid raster_membership(const GeneratorSet& s, const BBox& bbox, int nx, int ny,
                             const SolverConfig& cfg = {}, bool force_general = false);

/// Three-valued cellwise a AND b.
RasterGrid raster_and(const RasterGrid& a, const RasterGrid& b);
/// Three-valued cellwise a AND NOT b.
RasterGrid raster_and_not(const RasterGrid& a, const RasterGrid& b);

struct RasterComparison
{
    std::size_t cells = 0;
    std::size_t mismatches_band = 0;    ///< disagreements where either cell is Band
    std::size_t mismatches_offband = 0; ///< disagreements between In and Out
    std::size_t filled_union = 0;       ///< cells In for either grid

    std::size_t mismatches() const { return mismatches_band + mismatches_offband; }
    /// Off-band mismatches over the filled cells of either grid.
    double offband_fraction() const;
};

RasterComparison compare_rasters(const RasterGrid& a, const RasterGrid& b);

/**
 * @brief Members drawn by rejection sampling in parameter space.
 *
 * Coefficients are drawn uniformly per group ball, projected onto the equality
 * constraints when present, re-checked, mapped through c + G beta and kept if the
 * point passes membership. Throws SamplingExhausted once the attempts exceed
 * count / 1e-4.
 */
std::vector<Vector> sample_members(const GeneratorSet& s, std::size_t count, std::uint64_t seed,
                                   const SolverConfig& cfg = {});

inline constexpr std::uint64_t kDefaultSeed = 42;

} // namespace rcg

#endif
