#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "gx/checkpoint.hpp"
#include "gx/errors.hpp"

using namespace gx;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("gxtest_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

CheckpointMeta sample_meta() {
    CheckpointMeta meta;
    meta.game.family = GameFamily::lineGame;
    meta.game.boardShape = BoardShape::hexhex;
    meta.game.side = 3;
    meta.game.winLen = 4;
    meta.game.lossLen = 3;
    meta.game.swapRule = true;
    meta.network.cState = 10;
    meta.network.cAction = 3;
    meta.network.hiddenChannels = 6;
    meta.network.blocks = 1;
    meta.network.layersPerBlock = 2;
    meta.network.valueChannels = 2;
    meta.trainingStep = 1234;
    meta.rngSeed = 99;
    return meta;
}

std::vector<char> read_file(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    return std::vector<char>(std::istreambuf_iterator<char>(is), {});
}

void write_file(const fs::path& p, const std::vector<char>& bytes) {
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("checkpoint round-trip is byte-stable and parameter-exact at 32 bits") {
    TempDir dir;
    CheckpointMeta meta = sample_meta();
    std::mt19937_64 rng(5);
    Network net(meta.network, rng);
    // push the BN stats off their init values so buffers are exercised
    net.stemBn.runMean[0] = 0.125;
    net.stemBn.runVar[0] = 2.0;

    fs::path p1 = dir.path / "a.gmrf";
    save_checkpoint(net, meta, p1.string());
    LoadedCheckpoint lc = load_checkpoint(p1.string());

    // save -> load -> save produces identical bytes
    fs::path p2 = dir.path / "b.gmrf";
    save_checkpoint(lc.net, lc.meta, p2.string());
    CHECK(read_file(p1) == read_file(p2));

    // parameters compare equal at 32-bit precision
    auto pa = net.params();
    auto pb = lc.net.params();
    REQUIRE(pa.size() == pb.size());
    for (size_t i = 0; i < pa.size(); ++i) {
        REQUIRE(pa[i].value->numel() == pb[i].value->numel());
        for (size_t k = 0; k < pa[i].value->numel(); ++k)
            CHECK(static_cast<float>((*pa[i].value)[k]) ==
                  static_cast<float>((*pb[i].value)[k]));
    }
    CHECK(lc.net.stemBn.runMean[0] == 0.125);
}

TEST_CASE("checkpoint metadata round-trips the game config verbatim") {
    TempDir dir;
    CheckpointMeta meta = sample_meta();
    std::mt19937_64 rng(6);
    Network net(meta.network, rng);
    fs::path p = dir.path / "c.gmrf";
    save_checkpoint(net, meta, p.string());
    LoadedCheckpoint lc = load_checkpoint(p.string());
    CHECK(lc.meta.game == meta.game);
    CHECK(lc.meta.network == meta.network);
    CHECK(lc.meta.trainingStep == meta.trainingStep);
    CHECK(lc.meta.rngSeed == meta.rngSeed);
}

TEST_CASE("corrupt checkpoints give structured errors, never partial networks") {
    TempDir dir;
    CheckpointMeta meta = sample_meta();
    std::mt19937_64 rng(7);
    Network net(meta.network, rng);
    fs::path p = dir.path / "d.gmrf";
    save_checkpoint(net, meta, p.string());
    std::vector<char> bytes = read_file(p);

    SUBCASE("bad magic") {
        bytes[0] = 'X';
        write_file(dir.path / "bad.gmrf", bytes);
        CHECK_THROWS_WITH_AS(load_checkpoint((dir.path / "bad.gmrf").string()),
                             doctest::Contains("magic"), DataError);
    }
    SUBCASE("bad version") {
        bytes[4] = 9;
        write_file(dir.path / "bad.gmrf", bytes);
        CHECK_THROWS_WITH_AS(load_checkpoint((dir.path / "bad.gmrf").string()),
                             doctest::Contains("version"), DataError);
    }
    SUBCASE("truncated tensor payload") {
        bytes.resize(bytes.size() - 4);  // cut into the last tensor's floats
        write_file(dir.path / "bad.gmrf", bytes);
        CHECK_THROWS_WITH_AS(load_checkpoint((dir.path / "bad.gmrf").string()),
                             doctest::Contains("shape table"), DataError);
    }
    SUBCASE("truncated mid-table") {
        bytes.resize(bytes.size() - 100);
        CHECK_THROWS_AS(load_checkpoint([&] {
                            write_file(dir.path / "bad.gmrf", bytes);
                            return (dir.path / "bad.gmrf").string();
                        }()),
                        DataError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_checkpoint((dir.path / "nope.gmrf").string()), DataError);
    }
}
