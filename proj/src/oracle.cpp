#include "rcg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace rcg
{

RasterGrid::RasterGrid(const BBox& bbox, int nx, int ny) : bbox_(bbox), nx_(nx), ny_(ny)
{
    if (nx < 2 || ny < 2) throw ShapeError("raster needs at least 2 cells per axis");
    if (!(bbox.xmax > bbox.xmin) || !(bbox.ymax > bbox.ymin))
        throw ShapeError("raster bounding box is empty");
    cells_.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), CellState::Out);
}

Eigen::Vector2d RasterGrid::cell_center(int i, int j) const
{
    return {bbox_.xmin + (i + 0.5) * cell_width(), bbox_.ymin + (j + 0.5) * cell_height()};
}

std::size_t RasterGrid::filled_count() const
{
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), CellState::In));
}

std::size_t RasterGrid::band_count() const
{
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), CellState::Band));
}

double RasterGrid::filled_fraction() const
{
    return cells_.empty() ? 0.0 : static_cast<double>(filled_count()) / static_cast<double>(cells_.size());
}

bool RasterGrid::same_shape(const RasterGrid& other) const
{
    return bbox_ == other.bbox_ && nx_ == other.nx_ && ny_ == other.ny_;
}

CellState cell_state(const MemberResult& r, const SolverConfig& cfg)
{
    const double band_edge = cfg.tol_infeas + 10.0 * cfg.tol_feas;
    for (const FeasibilityVerdict& v : r.solves)
    {
        if (v.status == Status::Indeterminate) return CellState::Band;
        if (v.status == Status::Infeasible && v.residual <= band_edge) return CellState::Band;
    }
    if (r.status == Status::Indeterminate) return CellState::Band;
    return r.status == Status::Feasible ? CellState::In : CellState::Out;
}

RasterGrid raster_predicate(const BBox& bbox, int nx, int ny, const CellPredicate& pred)
{
    RasterGrid grid(bbox, nx, ny);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(ny)));

    // each worker owns whole rows, so the result does not depend on scheduling
    auto run_rows = [&](int first) {
        for (int j = first; j < ny; j += workers)
            for (int i = 0; i < nx; ++i) grid.set(i, j, pred(grid.cell_center(i, j)));
    };
    if (workers == 1)
    {
        run_rows(0);
        return grid;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_rows, w);
    for (std::thread& t : pool) t.join();
    return grid;
}

RasterGrid raster_membership(const GeneratorSet& s, const BBox& bbox, int nx, int ny,
                             const SolverConfig& cfg, bool force_general)
{
    const SetMembership mem(s, cfg, force_general);
    if (mem.dim() != 2)
        throw DimensionError("rasters need a planar set, got dimension " + std::to_string(mem.dim()));
    return raster_predicate(bbox, nx, ny, [&](const Eigen::Vector2d& x) {
        return cell_state(mem.test(x), cfg);
    });
}

namespace
{

template <typename F>
RasterGrid combine(const RasterGrid& a, const RasterGrid& b, F&& op)
{
    if (!a.same_shape(b)) throw ShapeError("rasters differ in bounding box or resolution");
    RasterGrid out(a.bbox(), a.nx(), a.ny());
    for (int j = 0; j < a.ny(); ++j)
        for (int i = 0; i < a.nx(); ++i) out.set(i, j, op(a.at(i, j), b.at(i, j)));
    return out;
}

} // namespace

RasterGrid raster_and(const RasterGrid& a, const RasterGrid& b)
{
    return combine(a, b, [](CellState x, CellState y) {
        if (x == CellState::Out || y == CellState::Out) return CellState::Out;
        if (x == CellState::Band || y == CellState::Band) return CellState::Band;
        return CellState::In;
    });
}

RasterGrid raster_and_not(const RasterGrid& a, const RasterGrid& b)
{
    return combine(a, b, [](CellState x, CellState y) {
        if (x == CellState::Out || y == CellState::In) return CellState::Out;
        if (x == CellState::Band || y == CellState::Band) return CellState::Band;
        return CellState::In;
    });
}

double RasterComparison::offband_fraction() const
{
    if (filled_union == 0) return mismatches_offband == 0 ? 0.0 : 1.0;
    return static_cast<double>(mismatches_offband) / static_cast<double>(filled_union);
}

RasterComparison compare_rasters(const RasterGrid& a, const RasterGrid& b)
{
    if (!a.same_shape(b)) throw ShapeError("rasters differ in bounding box or resolution");
    RasterComparison cmp;
    cmp.cells = a.cells().size();
    for (std::size_t k = 0; k < cmp.cells; ++k)
    {
        const CellState x = a.cells()[k];
        const CellState y = b.cells()[k];
        if (x == CellState::In || y == CellState::In) ++cmp.filled_union;
        if (x == y) continue;
        if (x == CellState::Band || y == CellState::Band)
            ++cmp.mismatches_band;
        else
            ++cmp.mismatches_offband;
    }
    return cmp;
}

// sampling

namespace
{

void sample_ball(Eigen::Ref<Vector> out, Norm p, double radius, std::mt19937_64& rng)
{
    const Index k = out.size();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (p)
    {
        case Norm::Inf:
            for (Index i = 0; i < k; ++i) out(i) = radius * (2.0 * unit(rng) - 1.0);
            break;
        case Norm::L2:
        {
            std::normal_distribution<double> normal(0.0, 1.0);
            for (Index i = 0; i < k; ++i) out(i) = normal(rng);
            const double n = out.norm();
            const double scale = radius * std::pow(unit(rng), 1.0 / static_cast<double>(k));
            if (n > 0.0) out *= scale / n;
            break;
        }
        case Norm::L1:
        {
            // k + 1 exponentials give a uniform point of the corner simplex
            std::exponential_distribution<double> expo(1.0);
            double total = 0.0;
            for (Index i = 0; i < k; ++i)
            {
                out(i) = expo(rng);
                total += out(i);
            }
            total += expo(rng);
            for (Index i = 0; i < k; ++i)
                out(i) = radius * out(i) / total * (unit(rng) < 0.5 ? -1.0 : 1.0);
            break;
        }
    }
}

} // namespace

std::vector<Vector> sample_members(const GeneratorSet& s, std::size_t count, std::uint64_t seed,
                                   const SolverConfig& cfg)
{
    if (count == 0) throw ShapeError("sample count must be at least 1");
    const Ccg& gen = std::holds_alternative<Ccg>(s) ? std::get<Ccg>(s) : std::get<Rcg>(s).outer;
    const SetMembership mem(s, cfg);
    const Index m = gen.num_generators();

    const bool constrained = gen.num_constraints() > 0;
    AffineProjector affine;
    Vector base;
    if (constrained)
    {
        affine = AffineProjector(gen.A, cfg.rank_tol);
        base = affine.min_norm_solution(gen.b);
        if (affine.residual(base, gen.b) > cfg.tol_feas)
            throw SamplingExhausted("equality constraints have no solution; the set is empty");
    }

    std::mt19937_64 rng(seed);
    const auto max_attempts = static_cast<std::size_t>(std::ceil(static_cast<double>(count) / 1e-4));
    std::vector<Vector> out;
    out.reserve(count);
    Vector beta = Vector::Zero(m);
    for (std::size_t attempt = 0; attempt < max_attempts && out.size() < count; ++attempt)
    {
        for (const NormGroup& g : gen.groups)
        {
            Vector sub(static_cast<Index>(g.indices.size()));
            sample_ball(sub, g.p, g.radius, rng);
            for (std::size_t i = 0; i < g.indices.size(); ++i) beta(g.indices[i]) = sub(static_cast<Index>(i));
        }
        if (constrained)
        {
            beta = affine.project(beta, base);
            // projections are exact no-ops inside the balls, so keep only exact members
            if (beta != project_groups(beta, gen.groups)) continue;
        }
        Vector x = gen.c + gen.G * beta;
        if (mem.test(x).status == Status::Feasible) out.push_back(std::move(x));
    }
    if (out.size() < count)
        throw SamplingExhausted("acceptance rate fell below 1e-4 (" + std::to_string(out.size()) +
                                " of " + std::to_string(count) + " samples)");
    return out;
}

} // namespace rcg
