#include "rcg/render.hpp"

#include <cctype>
#include <cmath>
#include <charconv>
#include <sstream>

namespace rcg
{

std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace
{

void check_color(const std::string& hex)
{
    bool ok = hex.size() == 6;
    for (char ch : hex) ok = ok && std::isxdigit(static_cast<unsigned char>(ch));
    if (!ok) throw ShapeError("color '" + hex + "' is not six hex digits");
}

// 10 significant digits: far below any cell size, and free of rounding noise
std::string svg_number(double v)
{
    if (std::abs(v) < 1e-12) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 10);
    return std::string(buf, res.ptr);
}

void emit_rect(std::ostringstream& os, const RasterGrid& g, int i, int j)
{
    const double w = g.cell_width();
    const double h = g.cell_height();
    os << "<rect x=\"" << svg_number(g.bbox().xmin + i * w) << "\" y=\""
       << svg_number(g.bbox().ymin + j * h) << "\" width=\"" << svg_number(w)
       << "\" height=\"" << svg_number(h) << "\"/>\n";
}

} // namespace

std::string render_svg(std::span<const Layer> layers, const RenderStyle& style)
{
    for (const Layer& l : layers)
    {
        if (l.grid == nullptr) throw ShapeError("layer without a grid");
        if (!l.grid->same_shape(*layers.front().grid))
            throw ShapeError("layers differ in bounding box or resolution");
        check_color(l.style.fill);
        if (!l.style.band_fill.empty()) check_color(l.style.band_fill);
    }

    BBox box{0.0, 1.0, 0.0, 1.0};
    int nx = 1, ny = 1;
    if (!layers.empty())
    {
        box = layers.front().grid->bbox();
        nx = layers.front().grid->nx();
        ny = layers.front().grid->ny();
    }
    const double width = box.xmax - box.xmin;
    const double height = box.ymax - box.ymin;
    const std::string flip = "matrix(1 0 0 -1 0 " + format_number(box.ymin + box.ymax) + ")";

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
       << format_number(style.cell_px * nx) << "\" height=\"" << format_number(style.cell_px * ny)
       << "\" viewBox=\"" << format_number(box.xmin) << " " << format_number(box.ymin) << " "
       << format_number(width) << " " << format_number(height)
       << "\" preserveAspectRatio=\"none\" shape-rendering=\"crispEdges\">\n";

    for (const Layer& l : layers)
    {
        const RasterGrid& g = *l.grid;
        os << "<g class=\"layer\" id=\"" << l.style.name << "\" fill=\"#" << l.style.fill
           << "\" stroke=\"none\" transform=\"" << flip << "\">\n";
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i)
                if (g.member(i, j)) emit_rect(os, g, i, j);
        if (!l.style.band_fill.empty())
        {
            os << "<g fill=\"#" << l.style.band_fill << "\">\n";
            for (int j = 0; j < g.ny(); ++j)
                for (int i = 0; i < g.nx(); ++i)
                    if (g.band(i, j)) emit_rect(os, g, i, j);
            os << "</g>\n";
        }
        os << "</g>\n";
    }

    if (style.legend && !layers.empty())
    {
        // swatches stacked along the left edge, top to bottom in layer order
        const double swatch = 0.04 * std::min(width, height);
        os << "<g class=\"legend\">\n";
        for (std::size_t k = 0; k < layers.size(); ++k)
        {
            os << "<rect x=\"" << svg_number(box.xmin + swatch * 0.5) << "\" y=\""
               << svg_number(box.ymin + swatch * (0.5 + 1.5 * static_cast<double>(k)))
               << "\" width=\"" << svg_number(swatch) << "\" height=\"" << svg_number(swatch)
               << "\" fill=\"#" << layers[k].style.fill << "\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string export_csv(const RasterGrid& grid)
{
    const BBox& b = grid.bbox();
    std::string out = format_number(b.xmin) + "," + format_number(b.xmax) + "," +
                      format_number(b.ymin) + "," + format_number(b.ymax) + "," +
                      std::to_string(grid.nx()) + "," + std::to_string(grid.ny()) + "\n";
    out.reserve(out.size() + static_cast<std::size_t>(grid.nx() * 2 * grid.ny()));
    for (int j = grid.ny() - 1; j >= 0; --j)
    {
        for (int i = 0; i < grid.nx(); ++i)
        {
            if (i > 0) out += ',';
            out += static_cast<char>('0' + static_cast<int>(grid.at(i, j)));
        }
        out += '\n';
    }
    return out;
}

namespace
{

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true)
    {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <typename T>
T parse_field(std::string_view s)
{
    T v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParseError("malformed CSV field '" + std::string(s) + "'");
    return v;
}

} // namespace

RasterGrid import_csv(std::string_view text)
{
    std::vector<std::string_view> lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw ParseError("empty CSV");

    const auto header = split(lines[0], ',');
    if (header.size() != 6) throw ParseError("CSV header needs 6 fields");
    const BBox box{parse_field<double>(header[0]), parse_field<double>(header[1]),
                   parse_field<double>(header[2]), parse_field<double>(header[3])};
    const int nx = parse_field<int>(header[4]);
    const int ny = parse_field<int>(header[5]);
    if (static_cast<int>(lines.size()) != ny + 1) throw ParseError("CSV row count differs from ny");

    RasterGrid grid(box, nx, ny);
    for (int r = 0; r < ny; ++r)
    {
        const auto fields = split(lines[static_cast<std::size_t>(r + 1)], ',');
        if (static_cast<int>(fields.size()) != nx) throw ParseError("CSV row length differs from nx");
        const int j = ny - 1 - r;
        for (int i = 0; i < nx; ++i)
        {
            const int v = parse_field<int>(fields[static_cast<std::size_t>(i)]);
            if (v < 0 || v > 2) throw ParseError("CSV cell value must be 0, 1 or 2");
            grid.set(i, j, static_cast<CellState>(v));
        }
    }
    return grid;
}

} // namespace rcg
