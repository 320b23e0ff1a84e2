#pragma once

// Uniform cell-centered meshes on interval/rectangle domains. Cell i (or
// (i,j)) has its center at (i + 1/2) h; zero-flux boundaries are realized
// by mirrored ghost cells in the operators, never stored.

#include <array>
#include <cstddef>
#include <vector>

namespace toxitaxis {

struct Grid {
    int dim = 1;
    std::array<double, 2> extents{1.0, 1.0};
    std::array<int, 2> cells{0, 1};
    std::array<double, 2> h{0.0, 0.0};

    static Grid line(double length, int n);
    static Grid box(double lx, double ly, int nx, int ny);

    int cell_count() const { return cells[0] * cells[1]; }
    double cell_volume() const { return dim == 1 ? h[0] : h[0] * h[1]; }
    double measure() const { return dim == 1 ? extents[0] : extents[0] * extents[1]; }
    double center(int axis, int i) const { return (i + 0.5) * h[axis]; }
    int index(int i, int j = 0) const { return j * cells[0] + i; }

    friend bool operator==(const Grid&, const Grid&) = default;
};

// Throws std::invalid_argument; requires dim in {1,2}, >= 3 cells and a
// positive extent per axis.
void validate(const Grid& grid);

struct Field {
    Grid grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const Grid& g, double fill = 0.0)
        : grid(g), values(static_cast<std::size_t>(g.cell_count()), fill) {}

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }

    double& at(int i, int j) { return values[static_cast<std::size_t>(grid.index(i, j))]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(grid.index(i, j))]; }
};

bool all_finite(const Field& f);
double min_value(const Field& f);
double max_value(const Field& f);
// L-infinity distance to a constant level.
double sup_distance(const Field& f, double level);

}  // namespace toxitaxis
