#pragma once

#include <cstdint>
#include <string>

#include "gx/game.hpp"
#include "gx/net.hpp"

namespace gx {

struct CheckpointMeta {
    GameConfig game;
    NetworkConfig network;
    long long trainingStep = 0;
    uint64_t rngSeed = 0;
};

// File layout (little-endian): magic "GMRF", u32 version = 1, u32 metadata
// length + UTF-8 JSON metadata, u32 tensor count, then per tensor: u16 name
// length + name, u8 rank, u32 dims each, raw IEEE-754 32-bit floats.
// Parameters live in memory as f64; save demotes to f32, load promotes, so
// save -> load -> save is byte-stable.
void save_checkpoint(const Network& net, const CheckpointMeta& meta,
                     const std::string& path);

struct LoadedCheckpoint {
    CheckpointMeta meta;
    Network net;
};

// Throws DataError naming the offending field; never returns a partial
// network.
LoadedCheckpoint load_checkpoint(const std::string& path);

}  // namespace gx
