#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gx/codec.hpp"
#include "gx/net.hpp"
#include "gx/treedist.hpp"

namespace gx {

// Per target channel: the matched source channel, if any. A source channel
// may serve several targets (one-to-many); a target never receives more than
// one source.
struct StateChannelMapping {
    struct Entry {
        std::optional<int> source;
        std::optional<int> editDistance;  // set when a rule-tree match decided it
    };
    std::vector<Entry> targets;  // indexed by target channel

    int matchedCount() const;
};

struct ActionChannelMapping {
    struct Entry {
        std::optional<int> source;
        bool oneToMany = false;  // the source channel also feeds other targets
    };
    std::vector<Entry> targets;

    int matchedCount() const;
};

enum class TransferInit { zeroShot, finetuneInit };

struct TransferMode {
    TransferInit init = TransferInit::zeroShot;
    bool reinitFinalLayers = false;  // requires finetuneInit
    void validate() const;
};

struct DomainSpecs {
    StateTensorSpec state;
    ActionTensorSpec action;
};

// Semantics-driven matching, never positional. Exact-payload kinds match on
// kind + payload; container channels match in order of appearance; piece
// channels match within the same player, by exact name first, otherwise by
// minimum Zhang-Shasha distance between rule trees (ties: lowest source
// channel index).
StateChannelMapping match_state_channels(const StateTensorSpec& src,
                                         const StateTensorSpec& tgt);

// pass<->pass, swap<->swap; placement<->placement; movement<->movement by
// bucket; source movement -> target placement maps only the (0,0) source
// channel; source placement -> target movement feeds all 49 movement targets
// from the one placement channel.
ActionChannelMapping match_action_channels(const ActionTensorSpec& src,
                                           const ActionTensorSpec& tgt);

struct TransplantResult {
    Network net;
    StateChannelMapping stateMapping;
    ActionChannelMapping actionMapping;
    std::string report;  // per-channel mapping table
};

// Builds a target network with the source's hidden trunk, copying the stem
// conv's input slices per state mapping and the final policy conv's output
// slices per action mapping. Unmatched target slices are zeroed for zero-shot
// transfer or freshly initialized for fine-tuning; the trunk, stem batchnorm,
// and value head transfer verbatim. initSeed drives any fresh initialization.
TransplantResult transplant(const Network& src, const DomainSpecs& srcSpecs,
                            const DomainSpecs& tgtSpecs, const TransferMode& mode,
                            uint64_t initSeed = 0);

// Re-randomizes the final conv before each head (policy logits conv and the
// value head's 1x1 conv).
void reinit_final_layers(Network& net, uint64_t seed);

std::string mapping_report(const StateTensorSpec& srcState, const StateTensorSpec& tgtState,
                           const StateChannelMapping& smap, const ActionTensorSpec& srcAction,
                           const ActionTensorSpec& tgtAction, const ActionChannelMapping& amap);

}  // namespace gx
