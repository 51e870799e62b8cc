#include "gx/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <map>
#include <random>
#include <vector>

#include "gx/errors.hpp"
#include "gx/serialize.hpp"

namespace gx {

namespace {

constexpr char kMagic[4] = {'G', 'M', 'R', 'F'};
constexpr uint32_t kVersion = 1;

void write_bytes(std::ostream& os, const void* p, size_t n) {
    os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void write_u16(std::ostream& os, uint16_t v) { write_bytes(os, &v, 2); }
void write_u32(std::ostream& os, uint32_t v) { write_bytes(os, &v, 4); }
void write_u8(std::ostream& os, uint8_t v) { write_bytes(os, &v, 1); }

void read_bytes(std::istream& is, void* p, size_t n, const std::string& field) {
    is.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(is.gcount()) != n)
        throw DataError("checkpoint: truncated while reading " + field);
}

uint16_t read_u16(std::istream& is, const std::string& field) {
    uint16_t v;
    read_bytes(is, &v, 2, field);
    return v;
}
uint32_t read_u32(std::istream& is, const std::string& field) {
    uint32_t v;
    read_bytes(is, &v, 4, field);
    return v;
}
uint8_t read_u8(std::istream& is, const std::string& field) {
    uint8_t v;
    read_bytes(is, &v, 1, field);
    return v;
}

void write_tensor(std::ostream& os, const std::string& name, const Tensor& t) {
    write_u16(os, static_cast<uint16_t>(name.size()));
    write_bytes(os, name.data(), name.size());
    write_u8(os, static_cast<uint8_t>(t.rank()));
    for (int d : t.shape) write_u32(os, static_cast<uint32_t>(d));
    std::vector<float> payload(t.numel());
    for (size_t i = 0; i < t.numel(); ++i) payload[i] = static_cast<float>(t.data[i]);
    write_bytes(os, payload.data(), payload.size() * sizeof(float));
}

}  // namespace

void save_checkpoint(const Network& net, const CheckpointMeta& meta,
                     const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw DataError("checkpoint: cannot open '" + path + "' for writing");
    write_bytes(os, kMagic, 4);
    write_u32(os, kVersion);

    Json metaJson;
    metaJson["game"] = game_config_to_json(meta.game);
    metaJson["network"] = network_config_to_json(meta.network);
    metaJson["trainingStep"] = meta.trainingStep;
    metaJson["rngSeed"] = meta.rngSeed;
    std::string metaText = metaJson.dump();
    write_u32(os, static_cast<uint32_t>(metaText.size()));
    write_bytes(os, metaText.data(), metaText.size());

    auto params = net.params();
    auto buffers = net.buffers();
    write_u32(os, static_cast<uint32_t>(params.size() + buffers.size()));
    for (const ParamRef& p : params) write_tensor(os, p.name, *p.value);
    for (const BufferRef& b : buffers) write_tensor(os, b.name, *b.value);
    if (!os) throw DataError("checkpoint: write failed for '" + path + "'");
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("checkpoint: cannot open '" + path + "'");
    is.seekg(0, std::ios::end);
    const uint64_t fileSize = static_cast<uint64_t>(is.tellg());
    is.seekg(0, std::ios::beg);
    char magic[4];
    read_bytes(is, magic, 4, "magic");
    if (std::memcmp(magic, kMagic, 4) != 0) throw DataError("checkpoint: bad magic bytes");
    uint32_t version = read_u32(is, "version");
    if (version != kVersion)
        throw DataError("checkpoint: unsupported version " + std::to_string(version));

    uint32_t metaLen = read_u32(is, "metadata length");
    std::string metaText(metaLen, '\0');
    read_bytes(is, metaText.data(), metaLen, "metadata");
    Json metaJson;
    try {
        metaJson = Json::parse(metaText);
    } catch (const Json::exception& e) {
        throw DataError(std::string("checkpoint: metadata is not valid JSON: ") + e.what());
    }
    CheckpointMeta meta;
    try {
        meta.game = game_config_from_json(metaJson.at("game"));
        meta.network = network_config_from_json(metaJson.at("network"));
        meta.trainingStep = metaJson.value("trainingStep", 0LL);
        meta.rngSeed = metaJson.value("rngSeed", 0ULL);
    } catch (const Json::exception& e) {
        throw DataError(std::string("checkpoint: metadata field error: ") + e.what());
    } catch (const ConfigError& e) {
        throw DataError(std::string("checkpoint: metadata: ") + e.what());
    }

    uint32_t tensorCount = read_u32(is, "tensor count");
    std::map<std::string, Tensor> table;
    for (uint32_t i = 0; i < tensorCount; ++i) {
        std::string ord = "tensor " + std::to_string(i);
        uint16_t nameLen = read_u16(is, ord + " name length");
        std::string name(nameLen, '\0');
        read_bytes(is, name.data(), nameLen, ord + " name");
        uint8_t rank = read_u8(is, "shape table (" + name + " rank)");
        std::vector<int> shape(rank);
        uint64_t numel = 1;
        for (uint8_t d = 0; d < rank; ++d) {
            uint32_t dim = read_u32(is, "shape table (" + name + " dim)");
            shape[d] = static_cast<int>(dim);
            numel *= dim;
        }
        if (numel * sizeof(float) > fileSize)
            throw DataError("checkpoint: shape table (" + name + ") exceeds the file size");
        std::vector<float> payload(numel);
        read_bytes(is, payload.data(), numel * sizeof(float), "shape table (" + name + " payload)");
        Tensor t(shape);
        for (size_t k = 0; k < numel; ++k) t.data[k] = static_cast<double>(payload[k]);
        if (!table.emplace(name, std::move(t)).second)
            throw DataError("checkpoint: duplicate tensor '" + name + "'");
    }

    // Build the network and fill it strictly from the table.
    std::mt19937_64 rng(0);
    LoadedCheckpoint out{meta, Network(meta.network, rng)};
    auto fill = [&table](const std::string& name, Tensor& dst) {
        auto it = table.find(name);
        if (it == table.end()) throw DataError("checkpoint: missing tensor '" + name + "'");
        if (it->second.shape != dst.shape)
            throw DataError("checkpoint: shape mismatch for tensor '" + name + "'");
        dst.data = std::move(it->second.data);
        table.erase(it);
    };
    for (ParamRef p : out.net.params()) fill(p.name, *p.value);
    for (BufferRef b : out.net.buffers()) fill(b.name, *b.value);
    if (!table.empty())
        throw DataError("checkpoint: unexpected tensor '" + table.begin()->first + "'");
    return out;
}

}  // namespace gx
