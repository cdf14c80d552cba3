#include "birk/classify.hpp"

#include <cmath>

namespace birk {

void write_grid_csv(const ClassificationGrid& g, const std::string& path,
                    const std::vector<std::string>& header) {
    CsvWriter w(path, header, "x,y,zeros");
    const double dx = (g.region.x1 - g.region.x0) / g.nx;
    const double dy = (g.region.y1 - g.region.y0) / g.ny;
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            double x = g.region.x0 + (ix + 0.5) * dx;
            double y = g.region.y0 + (iy + 0.5) * dy;
            w.row(format_real(x) + "," + format_real(y) + "," + format_real(g.at(ix, iy)));
        }
}

void write_grid_pgm(const ClassificationGrid& g, const std::string& path, double cap) {
    std::vector<unsigned char> px(std::size_t(g.nx) * g.ny, 0);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            double z = g.at(ix, iy);
            if (z < 0) z = 0;
            if (z > cap) z = cap;
            // top image row = largest y
            px[std::size_t(g.ny - 1 - iy) * g.nx + ix] =
                static_cast<unsigned char>(std::lround(255.0 * z / cap));
        }
    write_pgm(path, static_cast<std::size_t>(g.nx), static_cast<std::size_t>(g.ny), px);
}

} // namespace birk
