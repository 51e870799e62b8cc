#pragma once

#include <random>
#include <string>
#include <vector>

#include "gx/tensor.hpp"

namespace gx {

struct NetworkConfig {
    int cState = 0;
    int cAction = 0;
    int hiddenChannels = 0;  // 0 means 2 * cState
    int blocks = 2;
    int layersPerBlock = 2;
    int valueChannels = 4;

    int hidden() const { return hiddenChannels > 0 ? hiddenChannels : 2 * cState; }
    void validate() const;
    bool operator==(const NetworkConfig&) const = default;
};

// 2D convolution, stride 1. 3x3 kernels use padding 1, 1x1 use padding 0, so
// spatial dims are preserved.
struct Conv {
    int inC = 0, outC = 0, k = 3, pad = 1;
    Tensor w;  // (outC, inC, k, k)
    Tensor b;  // (outC)
    Tensor gw, gb;

    void configure(int in, int out, int kernel);
    void init(std::mt19937_64& rng);  // fan-in scaled uniform
    Tensor forward(const Tensor& x) const;                  // x: (N,inC,H,W)
    Tensor backward(const Tensor& x, const Tensor& dy);     // accumulates gw/gb
    void zeroGrad();
};

struct BatchNorm {
    int C = 0;
    double eps = 1e-5;
    double momentum = 0.9;  // kept fraction of the old running statistic
    Tensor gamma, beta, gGamma, gBeta;
    Tensor runMean, runVar;

    struct Cache {
        Tensor xhat;
        std::vector<double> invStd;
    };

    void configure(int channels);
    Tensor forwardTrain(const Tensor& x, Cache& cache, bool updateRunning);
    Tensor forwardEval(const Tensor& x) const;
    Tensor backward(const Cache& cache, const Tensor& dy);
    void zeroGrad();
};

struct Affine {
    int inF = 0, outF = 0;
    Tensor w;  // (outF, inF)
    Tensor b;  // (outF)
    Tensor gw, gb;

    void configure(int in, int out);
    void init(std::mt19937_64& rng);
    Tensor forward(const Tensor& x) const;               // x: (N,inF)
    Tensor backward(const Tensor& x, const Tensor& dy);  // accumulates gw/gb
    void zeroGrad();
};

Tensor relu(const Tensor& x);
Tensor relu_backward(const Tensor& y, const Tensor& dy);  // uses the forward output

// (N,C,H,W) -> (N,2C): per-channel spatial mean then per-channel spatial max.
Tensor global_pool(const Tensor& x, std::vector<size_t>* argmax);
Tensor global_pool_backward(const Tensor& x, const Tensor& dPool,
                            const std::vector<size_t>& argmax);

enum class NetMode { train, eval };

struct ParamRef {
    std::string name;
    Tensor* value;
    Tensor* grad;
};

struct BufferRef {
    std::string name;
    Tensor* value;
};

struct ForwardCache;

// Fully convolutional policy-value network: conv+BN stem, residual blocks of
// (conv+BN+ReLU)*layersPerBlock, two-conv policy head producing (cAction,H,W)
// logits, and a 1x1-conv + global mean/max pool + affine + tanh value head.
// Works on any spatial dims >= 1 with fixed parameters.
class Network {
public:
    struct Block {
        std::vector<Conv> convs;
        std::vector<BatchNorm> bns;
    };

    NetworkConfig cfg;
    Conv stem;
    BatchNorm stemBn;
    std::vector<Block> blocks;
    Conv policyConv1, policyConv2;
    Conv valueConv;  // 1x1
    Affine valueFc;  // 2*valueChannels -> 1

    Network() = default;
    Network(const NetworkConfig& cfg, std::mt19937_64& rng);

    struct Out {
        Tensor logits;               // (N, cAction, H, W)
        std::vector<double> values;  // one per batch element, in [-1, 1]
    };

    // Batched forward. Eval mode uses batchnorm running statistics and never
    // mutates the network; train mode uses batch statistics and (optionally)
    // updates running stats.
    Out forward(const Tensor& x) const;  // eval; safe from many threads
    Out forward(const Tensor& x, NetMode mode, ForwardCache* cache = nullptr,
                bool updateRunning = true);

    // Single-state convenience; input (cState,H,W).
    Out evaluate(const Tensor& state) const;

    // dLogits: (N,cAction,H,W); dValues: d(loss)/d(value) per element.
    void backward(const ForwardCache& cache, const Tensor& dLogits,
                  const std::vector<double>& dValues);

    void zeroGrads();
    std::vector<ParamRef> params();
    std::vector<ParamRef> params() const;
    std::vector<BufferRef> buffers();
    std::vector<BufferRef> buffers() const;
    long long paramCount() const;
};

// Frees layer intermediates needed by backward.
struct ForwardCache {
    Tensor input;
    Tensor stemConvOut;
    BatchNorm::Cache stemBnCache;
    Tensor stemOut;
    struct BlockCache {
        std::vector<Tensor> convIn;    // activation entering each conv
        std::vector<Tensor> convOut;   // pre-BN
        std::vector<BatchNorm::Cache> bnCache;
        std::vector<Tensor> act;       // post-ReLU
    };
    std::vector<BlockCache> blockCaches;
    Tensor trunkOut;
    Tensor pConv1Out, pAct;
    Tensor vConvOut, pool;
    std::vector<size_t> poolArgmax;
    Tensor fcOut;
    std::vector<double> values;
};

// Softmax over the distinct legal alias-group logits. groupCells are flat
// indices (channel*H*W + row*W + col) into the logits tensor, one per group;
// every aliased move shares its group's probability. Max-subtracted for
// stability. Throws DataError on an empty group list.
std::vector<double> masked_softmax(const Tensor& logits,
                                   const std::vector<size_t>& groupCells);

struct LossTerms {
    double policy = 0.0;
    double value = 0.0;
    double total() const { return policy + value; }
};

// Cross-entropy over alias groups plus squared value error:
//   L = -sum_g target_g * log(prob_g) + (value - z)^2
// Throws DataError if the target carries mass outside the legal group cells.
LossTerms loss_terms(const Tensor& logits, double value, const Tensor& policyTarget,
                     double z, const std::vector<size_t>& groupCells);

struct OptimizerConfig {
    double learningRate = 0.01;
    double momentum = 0.9;
    double weightDecay = 0.0;
};

// SGD with momentum over the network's accumulated gradients.
class SgdOptimizer {
public:
    void step(Network& net, const OptimizerConfig& cfg);

private:
    std::vector<Tensor> velocity_;
};

bool same_parameters(const Network& a, const Network& b);

}  // namespace gx
