#ifndef RCG_RENDER_HPP_
#define RCG_RENDER_HPP_

#include "rcg/oracle.hpp"

#include <span>
#include <string>
#include <string_view>

namespace rcg
{

/// Fill color of one layer, as six hex digits ("1f77b4").
struct LayerStyle
{
    std::string name;
    std::string fill;
    std::string band_fill; ///< empty: band cells are not drawn
};

struct RenderStyle
{
    double cell_px = 3.0;
    bool legend = false;
};

namespace palette
{
inline const LayerStyle outer{"outer", "2ca02c", ""};
inline const LayerStyle hole{"hole", "ff7f0e", ""};
inline const LayerStyle intersection{"intersection", "1f77b4", "aec7e8"};
inline const LayerStyle operand{"operand", "e377c2", ""};
inline const LayerStyle feasible{"feasible", "1f77b4", "aec7e8"};
} // namespace palette

struct Layer
{
    const RasterGrid* grid = nullptr;
    LayerStyle style;
};

/**
 * @brief SVG with one <g> per layer and one <rect> per filled cell.
 *
 * The viewBox is the bounding box in world coordinates; a y flip on each layer
 * group keeps ymax at the top. Output bytes depend only on the inputs.
 */
std::string render_svg(std::span<const Layer> layers, const RenderStyle& style = {});

/**
 * @brief CSV: one header line "xmin,xmax,ymin,ymax,nx,ny" with the values,
 * then ny rows of nx cells (0 out, 1 in, 2 band), top row (ymax) first.
 */
std::string export_csv(const RasterGrid& grid);

/// Inverse of export_csv. Throws ParseError on malformed input.
RasterGrid import_csv(std::string_view text);

/// Shortest decimal that round-trips to the same double.
std::string format_number(double v);

} // namespace rcg

#endif
