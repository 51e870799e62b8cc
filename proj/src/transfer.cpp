#include "gx/transfer.hpp"

#include <map>
#include <sstream>

#include "gx/errors.hpp"

namespace gx {

int StateChannelMapping::matchedCount() const {
    int n = 0;
    for (const auto& e : targets) n += e.source.has_value();
    return n;
}

int ActionChannelMapping::matchedCount() const {
    int n = 0;
    for (const auto& e : targets) n += e.source.has_value();
    return n;
}

void TransferMode::validate() const {
    if (reinitFinalLayers && init != TransferInit::finetuneInit)
        throw ConfigError("reinit-final-layers requires fine-tune initialization");
}

StateChannelMapping match_state_channels(const StateTensorSpec& src,
                                         const StateTensorSpec& tgt) {
    StateChannelMapping mapping;
    mapping.targets.resize(tgt.channels.size());

    // Containers match in order of appearance.
    std::vector<int> srcContainers;
    for (size_t i = 0; i < src.channels.size(); ++i)
        if (src.channels[i].kind == ChannelKind::containerExists)
            srcContainers.push_back(static_cast<int>(i));

    int tgtContainerOrdinal = 0;
    for (size_t j = 0; j < tgt.channels.size(); ++j) {
        const ChannelSemantic& t = tgt.channels[j];
        auto& entry = mapping.targets[j];
        if (t.kind == ChannelKind::containerExists) {
            if (tgtContainerOrdinal < static_cast<int>(srcContainers.size()))
                entry.source = srcContainers[tgtContainerOrdinal];
            ++tgtContainerOrdinal;
            continue;
        }
        if (t.kind == ChannelKind::piecePresence) {
            // Exact name match within the same player wins.
            for (size_t i = 0; i < src.channels.size(); ++i) {
                const ChannelSemantic& s = src.channels[i];
                if (s.kind == ChannelKind::piecePresence && s.player == t.player &&
                    s.pieceTypeName == t.pieceTypeName) {
                    entry.source = static_cast<int>(i);
                    break;
                }
            }
            if (entry.source) continue;
            // Otherwise: same player's source piece type with the smallest
            // rule-tree edit distance; ties take the lowest source index.
            int bestDist = -1;
            for (size_t i = 0; i < src.channels.size(); ++i) {
                const ChannelSemantic& s = src.channels[i];
                if (s.kind != ChannelKind::piecePresence || s.player != t.player) continue;
                int d = zhang_shasha_distance(t.ruleTree, s.ruleTree);
                if (bestDist < 0 || d < bestDist) {
                    bestDist = d;
                    entry.source = static_cast<int>(i);
                    entry.editDistance = d;
                }
            }
            continue;
        }
        // Exact-payload kinds.
        for (size_t i = 0; i < src.channels.size(); ++i) {
            if (src.channels[i] == t) {
                entry.source = static_cast<int>(i);
                break;
            }
        }
    }
    return mapping;
}

ActionChannelMapping match_action_channels(const ActionTensorSpec& src,
                                           const ActionTensorSpec& tgt) {
    using Kind = ActionChannelSemantic::Kind;
    ActionChannelMapping mapping;
    mapping.targets.resize(tgt.channels.size());

    const bool srcMovement = src.findChannel(Kind::movement) >= 0;
    const int srcPlacement = src.findChannel(Kind::placement);
    const int srcZeroDelta = src.findMovementChannel(0, 0);

    for (size_t j = 0; j < tgt.channels.size(); ++j) {
        const ActionChannelSemantic& t = tgt.channels[j];
        auto& entry = mapping.targets[j];
        switch (t.kind) {
            case Kind::pass: {
                int i = src.findChannel(Kind::pass);
                if (i >= 0) entry.source = i;
                break;
            }
            case Kind::swap: {
                int i = src.findChannel(Kind::swap);
                if (i >= 0) entry.source = i;
                break;
            }
            case Kind::placement: {
                if (srcPlacement >= 0)
                    entry.source = srcPlacement;
                else if (srcZeroDelta >= 0)
                    entry.source = srcZeroDelta;  // moves with equal from and to
                break;
            }
            case Kind::movement: {
                if (srcMovement) {
                    int i = src.findMovementChannel(t.dRowBucket, t.dColBucket);
                    if (i >= 0) entry.source = i;
                } else if (srcPlacement >= 0) {
                    entry.source = srcPlacement;  // one placement feeds all 49
                }
                break;
            }
        }
    }

    std::map<int, int> useCount;
    for (const auto& e : mapping.targets)
        if (e.source) ++useCount[*e.source];
    for (auto& e : mapping.targets)
        if (e.source && useCount[*e.source] > 1) e.oneToMany = true;
    return mapping;
}

namespace {

// Copies input-channel slice i of src's stem conv into slice j of dst's.
void copy_stem_slice(Conv& dst, const Conv& src, int j, int i) {
    const int k = dst.k;
    for (int co = 0; co < dst.outC; ++co)
        for (int ky = 0; ky < k; ++ky)
            for (int kx = 0; kx < k; ++kx)
                dst.w.data[((static_cast<size_t>(co) * dst.inC + j) * k + ky) * k + kx] =
                    src.w.data[((static_cast<size_t>(co) * src.inC + i) * k + ky) * k + kx];
}

void zero_stem_slice(Conv& dst, int j) {
    const int k = dst.k;
    for (int co = 0; co < dst.outC; ++co)
        for (int ky = 0; ky < k; ++ky)
            for (int kx = 0; kx < k; ++kx)
                dst.w.data[((static_cast<size_t>(co) * dst.inC + j) * k + ky) * k + kx] = 0.0;
}

// Output-channel slice of the final policy conv: weights and bias.
void copy_policy_slice(Conv& dst, const Conv& src, int cTgt, int cSrc) {
    const size_t sliceLen = static_cast<size_t>(dst.inC) * dst.k * dst.k;
    std::copy_n(src.w.data.begin() + cSrc * sliceLen, sliceLen,
                dst.w.data.begin() + cTgt * sliceLen);
    dst.b[cTgt] = src.b[cSrc];
}

void zero_policy_slice(Conv& dst, int cTgt) {
    const size_t sliceLen = static_cast<size_t>(dst.inC) * dst.k * dst.k;
    std::fill_n(dst.w.data.begin() + cTgt * sliceLen, sliceLen, 0.0);
    dst.b[cTgt] = 0.0;
}

void copy_batchnorm(BatchNorm& dst, const BatchNorm& src) {
    dst.gamma = src.gamma;
    dst.beta = src.beta;
    dst.runMean = src.runMean;
    dst.runVar = src.runVar;
}

void copy_conv(Conv& dst, const Conv& src) {
    dst.w = src.w;
    dst.b = src.b;
}

}  // namespace

void reinit_final_layers(Network& net, uint64_t seed) {
    std::mt19937_64 rng(seed);
    net.policyConv2.init(rng);
    net.valueConv.init(rng);
}

TransplantResult transplant(const Network& src, const DomainSpecs& srcSpecs,
                            const DomainSpecs& tgtSpecs, const TransferMode& mode,
                            uint64_t initSeed) {
    mode.validate();
    if (src.cfg.cState != srcSpecs.state.channelCount() ||
        src.cfg.cAction != srcSpecs.action.channelCount())
        throw DataError("transplant: source network does not match source specs");

    StateChannelMapping smap = match_state_channels(srcSpecs.state, tgtSpecs.state);
    ActionChannelMapping amap = match_action_channels(srcSpecs.action, tgtSpecs.action);

    NetworkConfig tgtCfg = src.cfg;
    tgtCfg.cState = tgtSpecs.state.channelCount();
    tgtCfg.cAction = tgtSpecs.action.channelCount();
    tgtCfg.hiddenChannels = src.cfg.hidden();  // trunk width follows the source

    std::mt19937_64 rng(initSeed);
    Network tgt(tgtCfg, rng);  // fresh init; kept only where nothing transfers

    // Stem: input-channel slices per state mapping, bias and batchnorm whole.
    for (int j = 0; j < tgtCfg.cState; ++j) {
        if (smap.targets[j].source)
            copy_stem_slice(tgt.stem, src.stem, j, *smap.targets[j].source);
        else if (mode.init == TransferInit::zeroShot)
            zero_stem_slice(tgt.stem, j);
    }
    tgt.stem.b = src.stem.b;
    copy_batchnorm(tgt.stemBn, src.stemBn);

    // Trunk transfers in its entirety.
    for (size_t bi = 0; bi < src.blocks.size(); ++bi) {
        for (size_t l = 0; l < src.blocks[bi].convs.size(); ++l) {
            copy_conv(tgt.blocks[bi].convs[l], src.blocks[bi].convs[l]);
            copy_batchnorm(tgt.blocks[bi].bns[l], src.blocks[bi].bns[l]);
        }
    }
    copy_conv(tgt.policyConv1, src.policyConv1);

    // Final policy conv: output-channel slices per action mapping.
    for (int c = 0; c < tgtCfg.cAction; ++c) {
        if (amap.targets[c].source)
            copy_policy_slice(tgt.policyConv2, src.policyConv2, c, *amap.targets[c].source);
        else if (mode.init == TransferInit::zeroShot)
            zero_policy_slice(tgt.policyConv2, c);
    }

    copy_conv(tgt.valueConv, src.valueConv);
    tgt.valueFc.w = src.valueFc.w;
    tgt.valueFc.b = src.valueFc.b;

    if (mode.reinitFinalLayers) reinit_final_layers(tgt, initSeed ^ 0x9e3779b97f4a7c15ULL);

    std::string report = mapping_report(srcSpecs.state, tgtSpecs.state, smap,
                                        srcSpecs.action, tgtSpecs.action, amap);
    return TransplantResult{std::move(tgt), std::move(smap), std::move(amap),
                            std::move(report)};
}

std::string mapping_report(const StateTensorSpec& srcState, const StateTensorSpec& tgtState,
                           const StateChannelMapping& smap, const ActionTensorSpec& srcAction,
                           const ActionTensorSpec& tgtAction, const ActionChannelMapping& amap) {
    std::ostringstream os;
    os << "state channels (" << tgtState.channelCount() << " target, "
       << srcState.channelCount() << " source):\n";
    for (size_t j = 0; j < smap.targets.size(); ++j) {
        const auto& e = smap.targets[j];
        os << "  [tgt " << j << "] " << tgtState.channels[j].describe() << " <- ";
        if (e.source) {
            os << "src " << *e.source << " " << srcState.channels[*e.source].describe();
            if (e.editDistance) os << "  (tree edit distance " << *e.editDistance << ")";
        } else {
            os << "UNMATCHED";
        }
        os << "\n";
    }
    os << "action channels (" << tgtAction.channelCount() << " target, "
       << srcAction.channelCount() << " source):\n";
    for (size_t j = 0; j < amap.targets.size(); ++j) {
        const auto& e = amap.targets[j];
        os << "  [tgt " << j << "] " << tgtAction.channels[j].describe() << " <- ";
        if (e.source) {
            os << "src " << *e.source << " " << srcAction.channels[*e.source].describe();
            if (e.oneToMany) os << "  (one-to-many)";
        } else {
            os << "UNMATCHED";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace gx
