#include "cli.hpp"

#include "rcg/ccg_ops.hpp"
#include "rcg/json_io.hpp"
#include "rcg/membership.hpp"
#include "rcg/oracle.hpp"
#include "rcg/rcg_ops.hpp"
#include "rcg/render.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace rcg::cli
{

namespace
{

using report_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

class IoError : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << data;
    if (!out) throw IoError("short write to '" + path + "'");
}

// FNV-1a, 64 bit
std::string digest(const std::string& bytes)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : bytes)
    {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::vector<double> parse_list(const std::string& text, const char* what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        }
        catch (const std::exception&)
        {
            throw ParseError(std::string("malformed ") + what + " entry '" + item + "'");
        }
    }
    return out;
}

Matrix parse_matrix(const std::string& text)
{
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(parse_list(row, "matrix"));
    if (rows.empty() || rows[0].empty()) throw ParseError("empty --matrix");
    Matrix T(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
    {
        if (rows[r].size() != rows[0].size()) throw ShapeError("--matrix has ragged rows");
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            T(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
    }
    return T;
}

struct Common
{
    SolverConfig cfg;
    std::uint64_t seed = kDefaultSeed;
    bool force_general = false;
    std::string bbox;
    std::string res = "200,200";
};

struct Run
{
    std::vector<std::string> args;
    std::ostream& out;
    std::ostream& err;
    Common common;
    report_json report;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    SetValue load(const std::string& path)
    {
        const std::string text = read_file(path);
        report["inputs"].push_back({{"path", path}, {"fnv1a64", digest(text)}});
        return parse_set_json(text);
    }

    GeneratorSet load_generator_set(const std::string& path)
    {
        SetValue v = load(path);
        if (auto* c = std::get_if<Ccg>(&v)) return std::move(*c);
        if (auto* r = std::get_if<Rcg>(&v)) return std::move(*r);
        throw ParseError("'" + path + "' holds a halfspace; a ccg or rcg is required");
    }

    void finish()
    {
        report_json cfg;
        cfg["tol_feas"] = common.cfg.tol_feas;
        cfg["tol_infeas"] = common.cfg.tol_infeas;
        cfg["max_iter"] = common.cfg.max_iter;
        cfg["seed"] = common.seed;
        cfg["force_general"] = common.force_general;
        cfg["bbox"] = common.bbox.empty() ? report_json("auto") : report_json(common.bbox);
        cfg["res"] = common.res;
        report["config"] = std::move(cfg);
        const auto elapsed = std::chrono::steady_clock::now() - start;
        report["wall_time_ms"] =
            std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() / 1000.0;
        out << report.dump(2) << "\n";
    }
};

report_json verdict_json(const FeasibilityVerdict& v)
{
    report_json j;
    j["status"] = to_string(v.status);
    if (std::isfinite(v.residual))
        j["residual"] = v.residual;
    else
        j["residual"] = "inf";
    j["iterations"] = v.iterations;
    return j;
}

report_json vector_json(const Vector& v)
{
    report_json a = report_json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

BBox parse_bbox(const std::string& text)
{
    const auto v = parse_list(text, "bbox");
    if (v.size() != 4) throw ParseError("--bbox needs xmin,xmax,ymin,ymax");
    return {v[0], v[1], v[2], v[3]};
}

std::pair<int, int> parse_res(const std::string& text)
{
    const auto v = parse_list(text, "res");
    if (v.size() != 2) throw ParseError("--res needs nx,ny");
    return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

// Generator bound of the outer set along each axis, padded by 10%.
BBox auto_bbox(const GeneratorSet& s)
{
    const Ccg& g = std::holds_alternative<Ccg>(s) ? std::get<Ccg>(s) : std::get<Rcg>(s).outer;
    if (g.dim() != 2) throw DimensionError("rasters need a planar set");
    double lo[2], hi[2];
    for (int k = 0; k < 2; ++k)
    {
        const Vector e = Vector::Unit(2, k);
        hi[k] = support_upper_bound(e, g).value;
        lo[k] = -support_upper_bound(-e, g).value;
        const double pad = 0.1 * std::max(hi[k] - lo[k], 1e-3);
        lo[k] -= pad;
        hi[k] += pad;
    }
    return {lo[0], hi[0], lo[1], hi[1]};
}

int cmd_validate(Run& run, const std::string& file)
{
    const SetValue v = run.load(file);
    run.report["command"] = "validate";
    run.report["kind"] = kind_name(v);
    run.report["valid"] = true;
    run.finish();
    return kOk;
}

int cmd_member(Run& run, const std::string& file, const std::string& point)
{
    const GeneratorSet s = run.load_generator_set(file);
    const auto coords = parse_list(point, "point");
    Vector x(static_cast<Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) x(static_cast<Index>(i)) = coords[i];

    const SetMembership mem(s, run.common.cfg, run.common.force_general);
    if (mem.dim() != x.size())
        throw ShapeError("point has dimension " + std::to_string(x.size()) + ", set has " +
                         std::to_string(mem.dim()));
    const MemberResult r = mem.test(x);

    run.report["command"] = "member";
    run.report["point"] = vector_json(x);
    run.report["status"] = to_string(r.status);
    run.report["path"] = to_string(r.path);
    report_json solves = report_json::array();
    for (const FeasibilityVerdict& v : r.solves) solves.push_back(verdict_json(v));
    run.report["solves"] = std::move(solves);
    run.finish();

    switch (r.status)
    {
        case Status::Feasible: return kOk;
        case Status::Infeasible: return kNegative;
        case Status::Indeterminate: return kIndeterminate;
    }
    return kIndeterminate;
}

void write_set(Run& run, const std::string& path, const SetValue& v)
{
    if (path.empty()) throw ParseError("-o is required for this operation");
    const std::string text = emit_set_json(v, 2) + "\n";
    write_file(path, text);
    run.report["output"] = {{"path", path}, {"kind", kind_name(v)}, {"fnv1a64", digest(text)}};
}

SetValue to_value(const GeneratorSet& s)
{
    if (const auto* c = std::get_if<Ccg>(&s)) return *c;
    return std::get<Rcg>(s);
}

void need_inputs(const std::vector<std::string>& inputs, std::size_t n, const std::string& op)
{
    if (inputs.size() != n)
        throw ParseError("op " + op + " takes " + std::to_string(n) + " input file(s), got " +
                         std::to_string(inputs.size()));
}

report_json groups_json(const std::vector<NormGroup>& groups)
{
    report_json a = report_json::array();
    for (const NormGroup& g : groups)
    {
        report_json idx = report_json::array();
        for (Index i : g.indices) idx.push_back(static_cast<long long>(i) + 1);
        a.push_back({{"idx", idx}, {"p", to_string(g.p)}, {"r", g.radius}});
    }
    return a;
}

int cmd_op(Run& run, const std::string& op, const std::vector<std::string>& inputs,
           const std::string& output, const std::string& matrix)
{
    run.report["command"] = "op";
    run.report["op"] = op;

    if (op == "map")
    {
        need_inputs(inputs, 1, op);
        const GeneratorSet s = run.load_generator_set(inputs[0]);
        if (matrix.empty()) throw ParseError("op map needs --matrix");
        write_set(run, output, to_value(set_linear_map(LinearMap{parse_matrix(matrix)}, s)));
    }
    else if (op == "minksum" || op == "intersect")
    {
        need_inputs(inputs, 2, op);
        const GeneratorSet a = run.load_generator_set(inputs[0]);
        const GeneratorSet b = run.load_generator_set(inputs[1]);
        const GeneratorSet r = op == "minksum" ? set_minkowski(a, b) : set_intersect(a, b);
        write_set(run, output, to_value(r));
    }
    else if (op == "halfspace")
    {
        need_inputs(inputs, 2, op);
        const SetValue sv = run.load(inputs[0]);
        const SetValue hv = run.load(inputs[1]);
        const auto* s = std::get_if<Ccg>(&sv);
        const auto* hs = std::get_if<Halfspace>(&hv);
        if (!s || !hs) throw ParseError("op halfspace takes a ccg file and a halfspace file");
        const HalfspaceCut cut = ccg_halfspace(*s, *hs);
        run.report["d_max"] = cut.d_max;
        run.report["empty"] = cut.is_empty();
        if (cut.is_empty())
        {
            run.finish();
            return kNegative;
        }
        write_set(run, output, std::get<Ccg>(cut.result));
    }
    else if (op == "annulus")
    {
        need_inputs(inputs, 1, op);
        const GeneratorSet s = run.load_generator_set(inputs[0]);
        const auto* r = std::get_if<Rcg>(&s);
        if (!r) throw ParseError("op annulus takes an rcg");
        run.report["common_generator_form"] = to_string(common_generator_form(*r).kind);
        const auto form = try_annulus_form(*r, run.common.cfg.rank_tol);
        run.report["applicable"] = form.has_value();
        if (form)
        {
            run.report["outer_groups"] = groups_json(form->outer_groups);
            run.report["inner_groups"] = groups_json(form->inner_groups);
        }
    }
    else if (op == "rz-intersect")
    {
        need_inputs(inputs, 2, op);
        const GeneratorSet a = run.load_generator_set(inputs[0]);
        const GeneratorSet b = run.load_generator_set(inputs[1]);
        const auto* s = std::get_if<Rcg>(&a);
        const auto* y = std::get_if<Ccg>(&b);
        if (!s || !y) throw ParseError("op rz-intersect takes an rcg file and a ccg file");
        const RzIntersection r = rz_intersect_zonotope(*s, *y, run.common.cfg.rank_tol);
        run.report["concentric_form"] = r.concentric.has_value();
        write_set(run, output, r.set);
    }
    else
    {
        throw ParseError("unknown op '" + op + "' (map, minksum, intersect, halfspace, annulus, rz-intersect)");
    }
    run.finish();
    return kOk;
}

struct RasterOutputs
{
    std::string csv;
    std::string svg;
    bool overlay = false;
    double cell_px = 3.0;
};

report_json raster_one(Run& run, const GeneratorSet& s, const BBox& box, int nx, int ny,
                       const RasterOutputs& outputs)
{
    const RasterGrid grid = raster_membership(s, box, nx, ny, run.common.cfg, run.common.force_general);
    report_json j;
    j["bbox"] = {box.xmin, box.xmax, box.ymin, box.ymax};
    j["res"] = {nx, ny};
    j["filled_cells"] = grid.filled_count();
    j["band_cells"] = grid.band_count();
    j["filled_fraction"] = grid.filled_fraction();
    j["filled_area"] = grid.filled_fraction() * (box.xmax - box.xmin) * (box.ymax - box.ymin);

    if (!outputs.csv.empty())
    {
        const std::string csv = export_csv(grid);
        write_file(outputs.csv, csv);
        j["csv"] = {{"path", outputs.csv}, {"fnv1a64", digest(csv)}};
    }
    if (!outputs.svg.empty())
    {
        std::vector<RasterGrid> extra;
        std::vector<Layer> layers;
        if (outputs.overlay)
        {
            if (const auto* r = std::get_if<Rcg>(&s))
            {
                extra.push_back(raster_membership(r->outer, box, nx, ny, run.common.cfg));
                extra.push_back(raster_membership(r->inner, box, nx, ny, run.common.cfg));
            }
        }
        if (extra.size() == 2)
        {
            layers.push_back({&extra[0], palette::outer});
            layers.push_back({&extra[1], palette::hole});
        }
        layers.push_back({&grid, palette::feasible});
        const std::string svg = render_svg(layers, RenderStyle{outputs.cell_px, outputs.overlay});
        write_file(outputs.svg, svg);
        j["svg"] = {{"path", outputs.svg}, {"fnv1a64", digest(svg)}, {"layers", layers.size()}};
    }
    return j;
}

int cmd_raster(Run& run, const std::string& file, const RasterOutputs& outputs)
{
    const GeneratorSet s = run.load_generator_set(file);
    const BBox box = run.common.bbox.empty() ? auto_bbox(s) : parse_bbox(run.common.bbox);
    const auto [nx, ny] = parse_res(run.common.res);
    run.report["command"] = "raster";
    run.report["raster"] = raster_one(run, s, box, nx, ny, outputs);
    run.finish();
    return kOk;
}

int cmd_batch(Run& run, const std::string& manifest_path, const std::string& out_dir)
{
    const std::string text = read_file(manifest_path);
    run.report["command"] = "batch";
    run.report["inputs"].push_back({{"path", manifest_path}, {"fnv1a64", digest(text)}});

    nlohmann::json manifest;
    try
    {
        manifest = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ParseError(std::string("malformed manifest: ") + e.what());
    }
    const fs::path base = fs::path(manifest_path).parent_path();
    const fs::path dest = out_dir.empty() ? base : fs::path(out_dir);
    if (!out_dir.empty())
    {
        std::error_code ec;
        fs::create_directories(dest, ec);
        if (ec) throw IoError("cannot create '" + out_dir + "'");
    }

    report_json results = report_json::array();
    try
    {
        const auto& b = manifest.at("bbox");
        const auto& r = manifest.at("res");
        const BBox box{b.at(0).get<double>(), b.at(1).get<double>(), b.at(2).get<double>(),
                       b.at(3).get<double>()};
        const int nx = r.at(0).get<int>();
        const int ny = r.at(1).get<int>();
        for (const auto& entry : manifest.at("entries"))
        {
            const std::string set_path = (base / entry.at("set").get<std::string>()).string();
            const GeneratorSet s = run.load_generator_set(set_path);
            RasterOutputs outputs;
            outputs.svg = (dest / entry.at("svg").get<std::string>()).string();
            if (entry.contains("csv")) outputs.csv = (dest / entry.at("csv").get<std::string>()).string();
            report_json j = raster_one(run, s, box, nx, ny, outputs);
            j["set"] = set_path;
            results.push_back(std::move(j));
        }
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ParseError(std::string("malformed manifest: ") + e.what());
    }
    run.report["rasters"] = std::move(results);
    run.finish();
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Constrained convex generator and roundabout set toolkit", "rcg"};
    app.require_subcommand(1);
    app.fallthrough();

    Run state{args, out, err, {}, {}};
    Common& common = state.common;
    app.add_option("--tol-feas", common.cfg.tol_feas, "feasibility tolerance")->capture_default_str();
    app.add_option("--tol-infeas", common.cfg.tol_infeas, "infeasibility threshold")->capture_default_str();
    app.add_option("--max-iter", common.cfg.max_iter, "solver iteration cap")->capture_default_str();
    app.add_option("--seed", common.seed, "random seed")->capture_default_str();
    app.add_flag("--force-general", common.force_general, "disable closed-form membership shortcuts");
    app.add_option("--bbox", common.bbox, "raster box xmin,xmax,ymin,ymax");
    app.add_option("--res", common.res, "raster resolution nx,ny")->capture_default_str();

    std::string file, point, op, output, matrix, manifest, out_dir;
    std::vector<std::string> inputs;
    RasterOutputs raster_out;

    auto* validate = app.add_subcommand("validate", "parse and validate a set file");
    validate->add_option("file", file)->required();

    auto* member = app.add_subcommand("member", "test membership of a point");
    member->add_option("file", file)->required();
    member->add_option("--point", point, "comma-separated coordinates")->required();

    auto* opcmd = app.add_subcommand("op", "apply a set operation");
    opcmd->add_option("name", op, "map, minksum, intersect, halfspace, annulus, rz-intersect")->required();
    opcmd->add_option("inputs", inputs)->required();
    opcmd->add_option("-o,--output", output, "result JSON");
    opcmd->add_option("--matrix", matrix, "linear map, rows separated by ';'");

    auto* raster = app.add_subcommand("raster", "rasterize a planar set");
    auto* render = app.add_subcommand("render", "rasterize a planar set and write SVG");
    for (auto* sub : {raster, render})
    {
        sub->add_option("file", file)->required();
        sub->add_option("--csv", raster_out.csv, "CSV output");
        sub->add_flag("--overlay", raster_out.overlay, "also draw outer and inner sets");
        sub->add_option("--cell-px", raster_out.cell_px, "SVG pixels per cell");
    }
    raster->add_option("--svg", raster_out.svg, "SVG output");
    render->add_option("--svg", raster_out.svg, "SVG output")->required();

    auto* batch = app.add_subcommand("batch", "rasterize every entry of a manifest");
    batch->add_option("manifest", manifest)->required();
    batch->add_option("--out-dir", out_dir, "output directory (default: manifest directory)");

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalid;
    }

    try
    {
        std::string echo = "rcg";
        for (const std::string& a : args) echo += " " + a;
        state.report["argv"] = echo;
        state.report["inputs"] = report_json::array();

        if (*validate) return cmd_validate(state, file);
        if (*member) return cmd_member(state, file, point);
        if (*opcmd) return cmd_op(state, op, inputs, output, matrix);
        if (*raster || *render) return cmd_raster(state, file, raster_out);
        if (*batch) return cmd_batch(state, manifest, out_dir);
    }
    catch (const IoError& e)
    {
        err << "error: " << e.what() << "\n";
        return kIo;
    }
    catch (const UnsupportedOperation& e)
    {
        err << "error: " << e.what() << "\n";
        return kUnsupported;
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}

} // namespace rcg::cli
