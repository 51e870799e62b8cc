#include "gx/net.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "gx/errors.hpp"

namespace gx {

void NetworkConfig::validate() const {
    if (cState < 1 || cAction < 1) throw ConfigError("network needs cState, cAction >= 1");
    if (hiddenChannels < 0 || blocks < 1 || layersPerBlock < 1 || valueChannels < 1)
        throw ConfigError("network config fields must be >= 1");
}

// ---------------------------------------------------------------------------
// Conv

void Conv::configure(int in, int out, int kernel) {
    inC = in;
    outC = out;
    k = kernel;
    pad = (kernel == 3) ? 1 : 0;
    w = Tensor({outC, inC, k, k});
    b = Tensor({outC});
    gw = Tensor({outC, inC, k, k});
    gb = Tensor({outC});
}

void Conv::init(std::mt19937_64& rng) {
    double bound = 1.0 / std::sqrt(static_cast<double>(inC) * k * k);
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (double& v : w.data) v = dist(rng);
    for (double& v : b.data) v = dist(rng);
}

void Conv::zeroGrad() {
    gw.fill(0.0);
    gb.fill(0.0);
}

Tensor Conv::forward(const Tensor& x) const {
    if (x.rank() != 4 || x.dim(1) != inC) throw DataError("conv: channel mismatch");
    const int N = x.dim(0), H = x.dim(2), W = x.dim(3);
    Tensor y({N, outC, H, W});
    for (int n = 0; n < N; ++n) {
        for (int co = 0; co < outC; ++co) {
            double* yBase = &y.data[y.idx4(n, co, 0, 0)];
            const double bias = b[co];
            for (int i = 0; i < H * W; ++i) yBase[i] = bias;
            for (int ci = 0; ci < inC; ++ci) {
                const double* xBase = &x.data[x.idx4(n, ci, 0, 0)];
                for (int ky = 0; ky < k; ++ky) {
                    const int hLo = std::max(0, pad - ky);
                    const int hHi = std::min(H, H + pad - ky);
                    for (int kx = 0; kx < k; ++kx) {
                        const double wv = w.data[((static_cast<size_t>(co) * inC + ci) * k + ky) * k + kx];
                        const int wLo = std::max(0, pad - kx);
                        const int wHi = std::min(W, W + pad - kx);
                        const int dx = kx - pad;
                        for (int h = hLo; h < hHi; ++h) {
                            const double* xr = xBase + static_cast<size_t>(h + ky - pad) * W + dx;
                            double* yr = yBase + static_cast<size_t>(h) * W;
                            for (int wi = wLo; wi < wHi; ++wi) yr[wi] += wv * xr[wi];
                        }
                    }
                }
            }
        }
    }
    return y;
}

Tensor Conv::backward(const Tensor& x, const Tensor& dy) {
    const int N = x.dim(0), H = x.dim(2), W = x.dim(3);
    Tensor dx({N, inC, H, W});
    for (int n = 0; n < N; ++n) {
        for (int co = 0; co < outC; ++co) {
            const double* dyBase = &dy.data[dy.idx4(n, co, 0, 0)];
            double acc = 0.0;
            for (int i = 0; i < H * W; ++i) acc += dyBase[i];
            gb[co] += acc;
            for (int ci = 0; ci < inC; ++ci) {
                const double* xBase = &x.data[x.idx4(n, ci, 0, 0)];
                double* dxBase = &dx.data[dx.idx4(n, ci, 0, 0)];
                for (int ky = 0; ky < k; ++ky) {
                    const int hLo = std::max(0, pad - ky);
                    const int hHi = std::min(H, H + pad - ky);
                    for (int kx = 0; kx < k; ++kx) {
                        const size_t wIdx = ((static_cast<size_t>(co) * inC + ci) * k + ky) * k + kx;
                        const double wv = w.data[wIdx];
                        const int wLo = std::max(0, pad - kx);
                        const int wHi = std::min(W, W + pad - kx);
                        const int dcol = kx - pad;
                        double gwAcc = 0.0;
                        for (int h = hLo; h < hHi; ++h) {
                            const double* xr = xBase + static_cast<size_t>(h + ky - pad) * W + dcol;
                            double* dxr = dxBase + static_cast<size_t>(h + ky - pad) * W + dcol;
                            const double* dyr = dyBase + static_cast<size_t>(h) * W;
                            for (int wi = wLo; wi < wHi; ++wi) {
                                gwAcc += dyr[wi] * xr[wi];
                                dxr[wi] += wv * dyr[wi];
                            }
                        }
                        gw.data[wIdx] += gwAcc;
                    }
                }
            }
        }
    }
    return dx;
}

// ---------------------------------------------------------------------------
// BatchNorm

void BatchNorm::configure(int channels) {
    C = channels;
    gamma = Tensor({C});
    gamma.fill(1.0);
    beta = Tensor({C});
    gGamma = Tensor({C});
    gBeta = Tensor({C});
    runMean = Tensor({C});
    runVar = Tensor({C});
    runVar.fill(1.0);
}

Tensor BatchNorm::forwardTrain(const Tensor& x, Cache& cache, bool updateRunning) {
    const int N = x.dim(0), H = x.dim(2), W = x.dim(3);
    const size_t plane = static_cast<size_t>(H) * W;
    const double m = static_cast<double>(N) * plane;
    Tensor y(x.shape);
    cache.xhat = Tensor(x.shape);
    cache.invStd.assign(C, 0.0);
    for (int c = 0; c < C; ++c) {
        double mean = 0.0;
        for (int n = 0; n < N; ++n) {
            const double* xp = &x.data[x.idx4(n, c, 0, 0)];
            for (size_t i = 0; i < plane; ++i) mean += xp[i];
        }
        mean /= m;
        double var = 0.0;
        for (int n = 0; n < N; ++n) {
            const double* xp = &x.data[x.idx4(n, c, 0, 0)];
            for (size_t i = 0; i < plane; ++i) {
                double d = xp[i] - mean;
                var += d * d;
            }
        }
        var /= m;
        const double invStd = 1.0 / std::sqrt(var + eps);
        cache.invStd[c] = invStd;
        const double g = gamma[c], bshift = beta[c];
        for (int n = 0; n < N; ++n) {
            const double* xp = &x.data[x.idx4(n, c, 0, 0)];
            double* xh = &cache.xhat.data[cache.xhat.idx4(n, c, 0, 0)];
            double* yp = &y.data[y.idx4(n, c, 0, 0)];
            for (size_t i = 0; i < plane; ++i) {
                xh[i] = (xp[i] - mean) * invStd;
                yp[i] = g * xh[i] + bshift;
            }
        }
        if (updateRunning) {
            runMean[c] = momentum * runMean[c] + (1.0 - momentum) * mean;
            runVar[c] = momentum * runVar[c] + (1.0 - momentum) * var;
        }
    }
    return y;
}

Tensor BatchNorm::forwardEval(const Tensor& x) const {
    const int N = x.dim(0), H = x.dim(2), W = x.dim(3);
    const size_t plane = static_cast<size_t>(H) * W;
    Tensor y(x.shape);
    for (int c = 0; c < C; ++c) {
        const double invStd = 1.0 / std::sqrt(runVar[c] + eps);
        const double scale = gamma[c] * invStd;
        const double shift = beta[c] - runMean[c] * scale;
        for (int n = 0; n < N; ++n) {
            const double* xp = &x.data[x.idx4(n, c, 0, 0)];
            double* yp = &y.data[y.idx4(n, c, 0, 0)];
            for (size_t i = 0; i < plane; ++i) yp[i] = scale * xp[i] + shift;
        }
    }
    return y;
}

Tensor BatchNorm::backward(const Cache& cache, const Tensor& dy) {
    const Tensor& xhat = cache.xhat;
    const int N = dy.dim(0), H = dy.dim(2), W = dy.dim(3);
    const size_t plane = static_cast<size_t>(H) * W;
    const double m = static_cast<double>(N) * plane;
    Tensor dx(dy.shape);
    for (int c = 0; c < C; ++c) {
        double sumDy = 0.0, sumDyXhat = 0.0;
        for (int n = 0; n < N; ++n) {
            const double* dyp = &dy.data[dy.idx4(n, c, 0, 0)];
            const double* xh = &xhat.data[xhat.idx4(n, c, 0, 0)];
            for (size_t i = 0; i < plane; ++i) {
                sumDy += dyp[i];
                sumDyXhat += dyp[i] * xh[i];
            }
        }
        gBeta[c] += sumDy;
        gGamma[c] += sumDyXhat;
        const double scale = gamma[c] * cache.invStd[c];
        const double meanDy = sumDy / m;
        const double meanDyXhat = sumDyXhat / m;
        for (int n = 0; n < N; ++n) {
            const double* dyp = &dy.data[dy.idx4(n, c, 0, 0)];
            const double* xh = &xhat.data[xhat.idx4(n, c, 0, 0)];
            double* dxp = &dx.data[dx.idx4(n, c, 0, 0)];
            for (size_t i = 0; i < plane; ++i)
                dxp[i] = scale * (dyp[i] - meanDy - xh[i] * meanDyXhat);
        }
    }
    return dx;
}

void BatchNorm::zeroGrad() {
    gGamma.fill(0.0);
    gBeta.fill(0.0);
}

// ---------------------------------------------------------------------------
// Affine

void Affine::configure(int in, int out) {
    inF = in;
    outF = out;
    w = Tensor({outF, inF});
    b = Tensor({outF});
    gw = Tensor({outF, inF});
    gb = Tensor({outF});
}

void Affine::init(std::mt19937_64& rng) {
    double bound = 1.0 / std::sqrt(static_cast<double>(inF));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (double& v : w.data) v = dist(rng);
    for (double& v : b.data) v = dist(rng);
}

void Affine::zeroGrad() {
    gw.fill(0.0);
    gb.fill(0.0);
}

Tensor Affine::forward(const Tensor& x) const {
    const int N = x.dim(0);
    Tensor y({N, outF});
    for (int n = 0; n < N; ++n) {
        for (int o = 0; o < outF; ++o) {
            double acc = b[o];
            for (int i = 0; i < inF; ++i)
                acc += w.data[static_cast<size_t>(o) * inF + i] * x.data[static_cast<size_t>(n) * inF + i];
            y.data[static_cast<size_t>(n) * outF + o] = acc;
        }
    }
    return y;
}

Tensor Affine::backward(const Tensor& x, const Tensor& dy) {
    const int N = x.dim(0);
    Tensor dx({N, inF});
    for (int n = 0; n < N; ++n) {
        for (int o = 0; o < outF; ++o) {
            const double g = dy.data[static_cast<size_t>(n) * outF + o];
            gb[o] += g;
            for (int i = 0; i < inF; ++i) {
                gw.data[static_cast<size_t>(o) * inF + i] += g * x.data[static_cast<size_t>(n) * inF + i];
                dx.data[static_cast<size_t>(n) * inF + i] += g * w.data[static_cast<size_t>(o) * inF + i];
            }
        }
    }
    return dx;
}

// ---------------------------------------------------------------------------
// Activation / pooling

Tensor relu(const Tensor& x) {
    Tensor y(x.shape);
    for (size_t i = 0; i < x.numel(); ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
    return y;
}

Tensor relu_backward(const Tensor& y, const Tensor& dy) {
    Tensor dx(dy.shape);
    for (size_t i = 0; i < dy.numel(); ++i) dx[i] = y[i] > 0.0 ? dy[i] : 0.0;
    return dx;
}

Tensor global_pool(const Tensor& x, std::vector<size_t>* argmax) {
    const int N = x.dim(0), C = x.dim(1);
    const size_t plane = static_cast<size_t>(x.dim(2)) * x.dim(3);
    Tensor y({N, 2 * C});
    if (argmax) argmax->assign(static_cast<size_t>(N) * C, 0);
    for (int n = 0; n < N; ++n) {
        for (int c = 0; c < C; ++c) {
            const double* xp = &x.data[x.idx4(n, c, 0, 0)];
            double sum = 0.0, best = xp[0];
            size_t bestIdx = 0;
            for (size_t i = 0; i < plane; ++i) {
                sum += xp[i];
                if (xp[i] > best) {
                    best = xp[i];
                    bestIdx = i;
                }
            }
            y.data[static_cast<size_t>(n) * 2 * C + c] = sum / static_cast<double>(plane);
            y.data[static_cast<size_t>(n) * 2 * C + C + c] = best;
            if (argmax) (*argmax)[static_cast<size_t>(n) * C + c] = bestIdx;
        }
    }
    return y;
}

Tensor global_pool_backward(const Tensor& x, const Tensor& dPool,
                            const std::vector<size_t>& argmax) {
    const int N = x.dim(0), C = x.dim(1);
    const size_t plane = static_cast<size_t>(x.dim(2)) * x.dim(3);
    Tensor dx(x.shape);
    for (int n = 0; n < N; ++n) {
        for (int c = 0; c < C; ++c) {
            const double dMean = dPool.data[static_cast<size_t>(n) * 2 * C + c] / static_cast<double>(plane);
            const double dMax = dPool.data[static_cast<size_t>(n) * 2 * C + C + c];
            double* dxp = &dx.data[dx.idx4(n, c, 0, 0)];
            for (size_t i = 0; i < plane; ++i) dxp[i] += dMean;
            dxp[argmax[static_cast<size_t>(n) * C + c]] += dMax;
        }
    }
    return dx;
}

// ---------------------------------------------------------------------------
// Network

Network::Network(const NetworkConfig& c, std::mt19937_64& rng) : cfg(c) {
    cfg.validate();
    const int hidden = cfg.hidden();
    stem.configure(cfg.cState, hidden, 3);
    stem.init(rng);
    stemBn.configure(hidden);
    blocks.resize(cfg.blocks);
    for (auto& blk : blocks) {
        blk.convs.resize(cfg.layersPerBlock);
        blk.bns.resize(cfg.layersPerBlock);
        for (int l = 0; l < cfg.layersPerBlock; ++l) {
            blk.convs[l].configure(hidden, hidden, 3);
            blk.convs[l].init(rng);
            blk.bns[l].configure(hidden);
        }
    }
    policyConv1.configure(hidden, hidden, 3);
    policyConv1.init(rng);
    policyConv2.configure(hidden, cfg.cAction, 3);
    policyConv2.init(rng);
    valueConv.configure(hidden, cfg.valueChannels, 1);
    valueConv.init(rng);
    valueFc.configure(2 * cfg.valueChannels, 1);
    valueFc.init(rng);
}

Network::Out Network::forward(const Tensor& x) const {
    // Eval mode never mutates the network.
    return const_cast<Network*>(this)->forward(x, NetMode::eval, nullptr, false);
}

Network::Out Network::forward(const Tensor& x, NetMode mode, ForwardCache* cache,
                              bool updateRunning) {
    if (x.rank() != 4 || x.dim(1) != cfg.cState)
        throw DataError("network forward: state channel mismatch");
    if (!x.allFinite()) throw DataError("network forward: non-finite input");
    const bool train = (mode == NetMode::train);
    if (train && !cache) throw DataError("train-mode forward requires a cache");

    Tensor h = stem.forward(x);
    if (cache) {
        cache->input = x;
        cache->stemConvOut = h;
    }
    h = train ? stemBn.forwardTrain(h, cache->stemBnCache, updateRunning)
              : stemBn.forwardEval(h);
    if (cache) cache->stemOut = h;
    if (cache) cache->blockCaches.assign(blocks.size(), {});

    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        Block& blk = blocks[bi];
        Tensor blockIn = h;
        Tensor a = h;
        for (size_t l = 0; l < blk.convs.size(); ++l) {
            Tensor convIn = a;
            Tensor c = blk.convs[l].forward(a);
            BatchNorm::Cache bc;
            Tensor bn = train ? blk.bns[l].forwardTrain(c, bc, updateRunning)
                              : blk.bns[l].forwardEval(c);
            a = relu(bn);
            if (cache) {
                auto& bcache = cache->blockCaches[bi];
                bcache.convIn.push_back(std::move(convIn));
                bcache.convOut.push_back(std::move(c));
                bcache.bnCache.push_back(std::move(bc));
                bcache.act.push_back(a);
            }
        }
        h = Tensor(blockIn.shape);
        for (size_t i = 0; i < h.numel(); ++i) h[i] = blockIn[i] + a[i];
    }
    if (cache) cache->trunkOut = h;

    Tensor p1 = policyConv1.forward(h);
    Tensor pAct = relu(p1);
    Tensor logits = policyConv2.forward(pAct);
    if (!logits.allFinite()) throw DataError("network forward: non-finite logits");

    Tensor v1 = valueConv.forward(h);
    std::vector<size_t> argmax;
    Tensor pool = global_pool(v1, &argmax);
    Tensor fc = valueFc.forward(pool);
    const int N = x.dim(0);
    std::vector<double> values(N);
    for (int n = 0; n < N; ++n) values[n] = std::tanh(fc.data[n]);

    if (cache) {
        cache->pConv1Out = std::move(p1);
        cache->pAct = std::move(pAct);
        cache->vConvOut = std::move(v1);
        cache->pool = std::move(pool);
        cache->poolArgmax = std::move(argmax);
        cache->fcOut = std::move(fc);
        cache->values = values;
    }
    return Out{std::move(logits), std::move(values)};
}

Network::Out Network::evaluate(const Tensor& state) const {
    if (state.rank() != 3) throw DataError("evaluate expects a (C,H,W) tensor");
    Tensor batched({1, state.dim(0), state.dim(1), state.dim(2)});
    batched.data = state.data;
    Out out = forward(batched);
    Tensor logits({cfg.cAction, state.dim(1), state.dim(2)});
    logits.data = std::move(out.logits.data);
    return Out{std::move(logits), std::move(out.values)};
}

void Network::backward(const ForwardCache& cache, const Tensor& dLogits,
                       const std::vector<double>& dValues) {
    const int N = dLogits.dim(0);
    // value head
    Tensor dFc({N, 1});
    for (int n = 0; n < N; ++n) {
        const double v = cache.values[n];
        dFc.data[n] = dValues[n] * (1.0 - v * v);  // through tanh
    }
    Tensor dPool = valueFc.backward(cache.pool, dFc);
    Tensor dVConv = global_pool_backward(cache.vConvOut, dPool, cache.poolArgmax);
    Tensor dTrunk = valueConv.backward(cache.trunkOut, dVConv);

    // policy head
    Tensor dPAct = policyConv2.backward(cache.pAct, dLogits);
    Tensor dP1 = relu_backward(cache.pAct, dPAct);
    Tensor dTrunkPolicy = policyConv1.backward(cache.trunkOut, dP1);
    for (size_t i = 0; i < dTrunk.numel(); ++i) dTrunk[i] += dTrunkPolicy[i];

    // residual blocks, reversed
    for (size_t bi = blocks.size(); bi-- > 0;) {
        Block& blk = blocks[bi];
        const auto& bc = cache.blockCaches[bi];
        Tensor d = dTrunk;  // gradient on the chain output
        for (size_t l = blk.convs.size(); l-- > 0;) {
            d = relu_backward(bc.act[l], d);
            d = blk.bns[l].backward(bc.bnCache[l], d);
            d = blk.convs[l].backward(bc.convIn[l], d);
        }
        for (size_t i = 0; i < dTrunk.numel(); ++i) dTrunk[i] += d[i];
    }

    Tensor dStem = stemBn.backward(cache.stemBnCache, dTrunk);
    stem.backward(cache.input, dStem);
}

void Network::zeroGrads() {
    for (ParamRef p : params()) p.grad->fill(0.0);
}

namespace {

void collect_params(Network* net, std::vector<ParamRef>& out) {
    auto add = [&out](const std::string& name, Tensor& v, Tensor& g) {
        out.push_back(ParamRef{name, &v, &g});
    };
    add("stem.conv.w", net->stem.w, net->stem.gw);
    add("stem.conv.b", net->stem.b, net->stem.gb);
    add("stem.bn.gamma", net->stemBn.gamma, net->stemBn.gGamma);
    add("stem.bn.beta", net->stemBn.beta, net->stemBn.gBeta);
    for (size_t bi = 0; bi < net->blocks.size(); ++bi) {
        auto& blk = net->blocks[bi];
        for (size_t l = 0; l < blk.convs.size(); ++l) {
            std::string prefix = "block" + std::to_string(bi) + ".layer" + std::to_string(l);
            add(prefix + ".conv.w", blk.convs[l].w, blk.convs[l].gw);
            add(prefix + ".conv.b", blk.convs[l].b, blk.convs[l].gb);
            add(prefix + ".bn.gamma", blk.bns[l].gamma, blk.bns[l].gGamma);
            add(prefix + ".bn.beta", blk.bns[l].beta, blk.bns[l].gBeta);
        }
    }
    add("policy.conv1.w", net->policyConv1.w, net->policyConv1.gw);
    add("policy.conv1.b", net->policyConv1.b, net->policyConv1.gb);
    add("policy.conv2.w", net->policyConv2.w, net->policyConv2.gw);
    add("policy.conv2.b", net->policyConv2.b, net->policyConv2.gb);
    add("value.conv.w", net->valueConv.w, net->valueConv.gw);
    add("value.conv.b", net->valueConv.b, net->valueConv.gb);
    add("value.fc.w", net->valueFc.w, net->valueFc.gw);
    add("value.fc.b", net->valueFc.b, net->valueFc.gb);
}

void collect_buffers(Network* net, std::vector<BufferRef>& out) {
    out.push_back(BufferRef{"stem.bn.run_mean", &net->stemBn.runMean});
    out.push_back(BufferRef{"stem.bn.run_var", &net->stemBn.runVar});
    for (size_t bi = 0; bi < net->blocks.size(); ++bi) {
        auto& blk = net->blocks[bi];
        for (size_t l = 0; l < blk.bns.size(); ++l) {
            std::string prefix = "block" + std::to_string(bi) + ".layer" + std::to_string(l);
            out.push_back(BufferRef{prefix + ".bn.run_mean", &blk.bns[l].runMean});
            out.push_back(BufferRef{prefix + ".bn.run_var", &blk.bns[l].runVar});
        }
    }
}

}  // namespace

std::vector<ParamRef> Network::params() {
    std::vector<ParamRef> out;
    collect_params(this, out);
    return out;
}

std::vector<ParamRef> Network::params() const {
    std::vector<ParamRef> out;
    collect_params(const_cast<Network*>(this), out);
    return out;
}

std::vector<BufferRef> Network::buffers() {
    std::vector<BufferRef> out;
    collect_buffers(this, out);
    return out;
}

std::vector<BufferRef> Network::buffers() const {
    std::vector<BufferRef> out;
    collect_buffers(const_cast<Network*>(this), out);
    return out;
}

long long Network::paramCount() const {
    long long n = 0;
    for (const ParamRef& p : params()) n += static_cast<long long>(p.value->numel());
    return n;
}

// ---------------------------------------------------------------------------
// Softmax / loss / optimizer

std::vector<double> masked_softmax(const Tensor& logits,
                                   const std::vector<size_t>& groupCells) {
    if (groupCells.empty()) throw DataError("masked_softmax: empty legal set");
    double maxLogit = -std::numeric_limits<double>::infinity();
    for (size_t cell : groupCells) maxLogit = std::max(maxLogit, logits[cell]);
    std::vector<double> probs(groupCells.size());
    double sum = 0.0;
    for (size_t i = 0; i < groupCells.size(); ++i) {
        probs[i] = std::exp(logits[groupCells[i]] - maxLogit);
        sum += probs[i];
    }
    for (double& p : probs) p /= sum;
    return probs;
}

LossTerms loss_terms(const Tensor& logits, double value, const Tensor& policyTarget,
                     double z, const std::vector<size_t>& groupCells) {
    double legalMass = 0.0;
    for (size_t cell : groupCells) legalMass += policyTarget[cell];
    double totalMass = 0.0;
    for (double v : policyTarget.data) totalMass += v;
    if (std::abs(totalMass - legalMass) > 1e-9)
        throw DataError("policy target has mass on illegal cells");

    std::vector<double> probs = masked_softmax(logits, groupCells);
    LossTerms terms;
    for (size_t i = 0; i < groupCells.size(); ++i) {
        double t = policyTarget[groupCells[i]];
        if (t > 0.0) terms.policy -= t * std::log(probs[i]);
    }
    terms.value = (value - z) * (value - z);
    return terms;
}

void SgdOptimizer::step(Network& net, const OptimizerConfig& cfg) {
    std::vector<ParamRef> params = net.params();
    if (velocity_.empty()) {
        velocity_.reserve(params.size());
        for (const ParamRef& p : params) velocity_.push_back(Tensor(p.value->shape));
    }
    if (velocity_.size() != params.size())
        throw DataError("optimizer bound to a different network");
    for (size_t i = 0; i < params.size(); ++i) {
        Tensor& v = velocity_[i];
        Tensor& p = *params[i].value;
        const Tensor& g = *params[i].grad;
        for (size_t j = 0; j < p.numel(); ++j) {
            double grad = g[j] + cfg.weightDecay * p[j];
            v[j] = cfg.momentum * v[j] + grad;
            p[j] -= cfg.learningRate * v[j];
        }
    }
}

bool same_parameters(const Network& a, const Network& b) {
    auto pa = a.params();
    auto pb = b.params();
    if (pa.size() != pb.size()) return false;
    for (size_t i = 0; i < pa.size(); ++i) {
        if (pa[i].name != pb[i].name) return false;
        if (!(*pa[i].value == *pb[i].value)) return false;
    }
    auto ba = a.buffers();
    auto bb = b.buffers();
    if (ba.size() != bb.size()) return false;
    for (size_t i = 0; i < ba.size(); ++i)
        if (!(*ba[i].value == *bb[i].value)) return false;
    return true;
}

}  // namespace gx
