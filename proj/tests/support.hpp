#ifndef RCG_TESTS_SUPPORT_HPP_
#define RCG_TESTS_SUPPORT_HPP_

#include "rcg/ccg_ops.hpp"
#include "rcg/json_io.hpp"
#include "rcg/membership.hpp"
#include "rcg/oracle.hpp"
#include "rcg/rcg_ops.hpp"
#include "rcg/render.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace rcg::testing
{

inline std::string data_path(const std::string& rel) { return std::string(RCG_DATA_DIR) + "/" + rel; }
inline std::string golden_path(const std::string& rel) { return std::string(RCG_GOLDEN_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline SetValue load_set(const std::string& rel) { return parse_set_json(slurp(data_path(rel))); }
inline Rcg load_rcg(const std::string& rel) { return std::get<Rcg>(load_set(rel)); }
inline Ccg load_ccg(const std::string& rel) { return std::get<Ccg>(load_set(rel)); }

// Small random instances. Everything is seeded so failures replay.
class Gen
{
    public:
        explicit Gen(std::uint64_t seed) : rng_(seed) {}

        double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
        int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
        std::mt19937_64& rng() { return rng_; }

        Vector vector(Index n, double scale = 1.0)
        {
            Vector v(n);
            for (Index i = 0; i < n; ++i) v(i) = uniform(-scale, scale);
            return v;
        }

        Matrix matrix(Index r, Index c, double scale = 1.0)
        {
            Matrix M(r, c);
            for (Index i = 0; i < r; ++i)
                for (Index j = 0; j < c; ++j) M(i, j) = uniform(-scale, scale);
            return M;
        }

        Norm norm() { return static_cast<Norm>(integer(0, 2)); }

        // random partition of m indices into contiguous groups with random norms
        std::vector<NormGroup> groups(Index m, double rmin = 0.3, double rmax = 1.0)
        {
            std::vector<NormGroup> out;
            Index start = 0;
            while (start < m)
            {
                const Index len = std::min<Index>(m - start, integer(1, 3));
                NormGroup g;
                for (Index i = start; i < start + len; ++i) g.indices.push_back(i);
                g.p = norm();
                g.radius = uniform(rmin, rmax);
                out.push_back(g);
                start += len;
            }
            return out;
        }

        // planar CCG; optional single equality row that keeps the set nonempty
        Ccg ccg(Index n, Index m, bool constrained)
        {
            Ccg s;
            s.c = vector(n, 1.0);
            s.G = matrix(n, m, 1.5);
            s.groups = groups(m);
            if (constrained)
            {
                Vector beta0 = project_groups(vector(m, 1.0), s.groups) * 0.5;
                s.A = matrix(1, m, 1.0);
                s.b = s.A * beta0;
            }
            else
            {
                s.A = Matrix(0, m);
                s.b = Vector(0);
            }
            return validate_ccg(s);
        }

    private:
        std::mt19937_64 rng_;
};

// Points spread around a set: inside the generator box and a margin beyond.
inline std::vector<Vector> probe_points(const Ccg& s, std::size_t count, Gen& gen, double margin = 0.3)
{
    const Index n = s.dim();
    Vector lo(n), hi(n);
    for (Index k = 0; k < n; ++k)
    {
        const Vector e = Vector::Unit(n, k);
        hi(k) = support_upper_bound(e, s).value + margin;
        lo(k) = -support_upper_bound(-e, s).value - margin;
    }
    std::vector<Vector> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
    {
        Vector x(n);
        for (Index k = 0; k < n; ++k) x(k) = gen.uniform(lo(k), hi(k));
        out.push_back(x);
    }
    return out;
}

// Three-valued verdict used for cellwise comparisons of single points.
inline CellState point_state(const GeneratorSet& s, const Vector& x, const SolverConfig& cfg = {})
{
    return cell_state(SetMembership(s, cfg).test(x), cfg);
}

inline CellState ccg_state(const CcgMembership& mem, const Vector& x, const SolverConfig& cfg = {})
{
    MemberResult r;
    const FeasibilityVerdict v = mem.test(x);
    r.status = v.status;
    r.solves.push_back(v);
    return cell_state(r, cfg);
}

} // namespace rcg::testing

#endif
