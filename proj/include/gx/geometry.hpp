#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gx {

// Exactly two players. Player ids are 1 and 2 everywhere; 0 means "nobody".
struct PlayerId {
    int id = 1;

    PlayerId() = default;
    explicit PlayerId(int v) : id(v) {
        if (v != 1 && v != 2) throw std::invalid_argument("PlayerId must be 1 or 2");
    }
    PlayerId opponent() const { return PlayerId(id == 1 ? 2 : 1); }
    bool operator==(const PlayerId&) const = default;
    auto operator<=>(const PlayerId&) const = default;
};

struct Cell {
    int row = 0;
    int col = 0;
    bool operator==(const Cell&) const = default;
    auto operator<=>(const Cell&) const = default;
};

enum class MoveKind { placement, movement, pass, swap_sides };

// placement carries `to` only; movement carries `from` and `to`; pass/swap carry neither.
struct MoveRecord {
    MoveKind kind = MoveKind::pass;
    bool hasFrom = false;
    bool hasTo = false;
    Cell from{};
    Cell to{};
    PlayerId player{};

    static MoveRecord placement(Cell to, PlayerId p) {
        return MoveRecord{MoveKind::placement, false, true, Cell{}, to, p};
    }
    static MoveRecord movement(Cell from, Cell to, PlayerId p) {
        return MoveRecord{MoveKind::movement, true, true, from, to, p};
    }
    static MoveRecord pass_move(PlayerId p) {
        return MoveRecord{MoveKind::pass, false, false, Cell{}, Cell{}, p};
    }
    static MoveRecord swap_move(PlayerId p) {
        return MoveRecord{MoveKind::swap_sides, false, false, Cell{}, Cell{}, p};
    }

    bool operator==(const MoveRecord&) const = default;
    auto operator<=>(const MoveRecord&) const = default;
};

enum class BoardShape { square, hexhex };

// Adjacency model used by neighbors(). Square boards default to 4-orthogonal;
// the Hex game overrides a square board with the 6-neighbor axial model.
// Hex-hex boards are embedded in doubled-column coordinates, so their
// neighbors sit at (0,+-2) and (+-1,+-1).
enum class Adjacency { orthogonal, hexAxial, hexDoubled };

struct Direction {
    int dRow = 0;
    int dCol = 0;
    bool operator==(const Direction&) const = default;
};

struct Geometry {
    BoardShape shape = BoardShape::square;
    int side = 0;
    int rows = 0;
    int cols = 0;
    Adjacency adjacency = Adjacency::orthogonal;
    std::vector<uint8_t> playableMask;  // rows*cols, row-major

    bool inBounds(Cell c) const {
        return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols;
    }
    bool playable(Cell c) const {
        return inBounds(c) && playableMask[static_cast<size_t>(c.row) * cols + c.col] != 0;
    }
    int playableCount() const;
    int cellIndex(Cell c) const { return c.row * cols + c.col; }

    bool operator==(const Geometry&) const = default;
};

// Builds a square(side) board (all cells playable) or a hexhex(side) board
// embedded in a (2*side-1) x (4*side-3) grid. Hex cell (r, q) lands at grid
// row r, grid col 2*q + |r - (side-1)|, so horizontal hex neighbors are two
// grid columns apart.
Geometry make_geometry(BoardShape shape, int side);

// Same grid as make_geometry but with a different neighbor model (used by the
// Hex game: square dims, 6-neighbor axial adjacency).
Geometry make_geometry(BoardShape shape, int side, Adjacency adjacency);

// Playable adjacent cells under the geometry's adjacency model.
std::vector<Cell> neighbors(const Geometry& g, Cell c);

// Half-axis direction sets for line detection. Square boards have 2
// orthogonal + 2 diagonal axes; hex-hex boards have 3 hex axes and 3
// "diagonal" axes (cell pairs sharing exactly one vertex through an edge).
std::vector<Direction> line_directions(const Geometry& g, bool diagonalOnly);

}  // namespace gx
