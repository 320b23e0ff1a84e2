#include "toxitaxis/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace toxitaxis {

Grid Grid::line(double length, int n) {
    Grid g;
    g.dim = 1;
    g.extents = {length, 1.0};
    g.cells = {n, 1};
    g.h = {length / n, 0.0};
    validate(g);
    return g;
}

Grid Grid::box(double lx, double ly, int nx, int ny) {
    Grid g;
    g.dim = 2;
    g.extents = {lx, ly};
    g.cells = {nx, ny};
    g.h = {lx / nx, ly / ny};
    validate(g);
    return g;
}

void validate(const Grid& g) {
    if (g.dim != 1 && g.dim != 2) throw std::invalid_argument("grid.dim must be 1 or 2");
    for (int axis = 0; axis < g.dim; ++axis) {
        if (g.cells[axis] < 3) throw std::invalid_argument("grid needs at least 3 cells per axis");
        if (!(g.extents[axis] > 0.0) || !std::isfinite(g.extents[axis])) {
            throw std::invalid_argument("grid extents must be positive");
        }
    }
    if (g.dim == 1 && g.cells[1] != 1) throw std::invalid_argument("1d grid must have cells[1] == 1");
}

bool all_finite(const Field& f) {
    for (double v : f.values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

double min_value(const Field& f) {
    double m = f.values.empty() ? 0.0 : f.values[0];
    for (double v : f.values) m = std::min(m, v);
    return m;
}

double max_value(const Field& f) {
    double m = f.values.empty() ? 0.0 : f.values[0];
    for (double v : f.values) m = std::max(m, v);
    return m;
}

double sup_distance(const Field& f, double level) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v - level));
    return m;
}

}  // namespace toxitaxis
