#include "gx/geometry.hpp"

#include <algorithm>
#include <cstdlib>

namespace gx {

int Geometry::playableCount() const {
    return static_cast<int>(std::count(playableMask.begin(), playableMask.end(), uint8_t{1}));
}

Geometry make_geometry(BoardShape shape, int side) {
    return make_geometry(shape, side,
                         shape == BoardShape::square ? Adjacency::orthogonal
                                                     : Adjacency::hexDoubled);
}

Geometry make_geometry(BoardShape shape, int side, Adjacency adjacency) {
    if (side < 1) throw std::invalid_argument("board side must be >= 1");
    Geometry g;
    g.shape = shape;
    g.side = side;
    g.adjacency = adjacency;
    if (shape == BoardShape::square) {
        g.rows = side;
        g.cols = side;
        g.playableMask.assign(static_cast<size_t>(g.rows) * g.cols, 1);
    } else {
        g.rows = 2 * side - 1;
        g.cols = 4 * side - 3;
        g.playableMask.assign(static_cast<size_t>(g.rows) * g.cols, 0);
        for (int r = 0; r < g.rows; ++r) {
            int rowLen = (r < side) ? side + r : side + (2 * side - 2 - r);
            int offset = std::abs(r - (side - 1));
            for (int q = 0; q < rowLen; ++q) {
                g.playableMask[static_cast<size_t>(r) * g.cols + (2 * q + offset)] = 1;
            }
        }
    }
    return g;
}

namespace {

constexpr Direction kOrthogonal[4] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}};
constexpr Direction kHexAxial[6] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}, {1, -1}, {-1, 1}};
constexpr Direction kHexDoubled[6] = {{0, 2}, {0, -2}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

}  // namespace

std::vector<Cell> neighbors(const Geometry& g, Cell c) {
    if (!g.playable(c)) throw std::invalid_argument("neighbors: cell not playable");
    const Direction* dirs = nullptr;
    int n = 0;
    switch (g.adjacency) {
        case Adjacency::orthogonal: dirs = kOrthogonal; n = 4; break;
        case Adjacency::hexAxial: dirs = kHexAxial; n = 6; break;
        case Adjacency::hexDoubled: dirs = kHexDoubled; n = 6; break;
    }
    std::vector<Cell> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        Cell nb{c.row + dirs[i].dRow, c.col + dirs[i].dCol};
        if (g.playable(nb)) out.push_back(nb);
    }
    return out;
}

std::vector<Direction> line_directions(const Geometry& g, bool diagonalOnly) {
    if (g.shape == BoardShape::square) {
        if (diagonalOnly) return {{1, 1}, {1, -1}};
        return {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
    }
    if (diagonalOnly) return {{2, 0}, {1, 3}, {1, -3}};
    return {{0, 2}, {1, 1}, {1, -1}};
}

}  // namespace gx
