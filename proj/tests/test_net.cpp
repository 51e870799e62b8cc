#include <doctest.h>

#include <cmath>
#include <random>

#include "gx/net.hpp"
#include "gx/rng.hpp"

#include "oracles.hpp"

using namespace gx;

namespace {

using oracles::FdProblem;
using oracles::backprop_batch;
using oracles::make_problem;
using oracles::max_grad_rel_err;
using oracles::mean_batch_loss;
using oracles::random_tensor;
using oracles::rel_err;

NetworkConfig tiny_config(int cState = 3, int cAction = 2) {
    NetworkConfig cfg;
    cfg.cState = cState;
    cfg.cAction = cAction;
    cfg.hiddenChannels = 4;
    cfg.blocks = 1;
    cfg.layersPerBlock = 2;
    cfg.valueChannels = 2;
    return cfg;
}

}  // namespace

TEST_CASE("all-zero weights give zero logits and zero value") {
    std::mt19937_64 rng(1);
    Network net(tiny_config(), rng);
    for (auto& p : net.params()) p.value->fill(0.0);
    Tensor x = random_tensor({net.cfg.cState, 5, 5}, rng);
    Network::Out out = net.evaluate(x);
    for (double v : out.logits.data) CHECK(v == 0.0);
    CHECK(out.values[0] == 0.0);
}

TEST_CASE("fully convolutional: one net serves multiple board sizes") {
    std::mt19937_64 rng(2);
    Network net(tiny_config(), rng);
    Tensor a = random_tensor({net.cfg.cState, 5, 5}, rng);
    Tensor b = random_tensor({net.cfg.cState, 9, 9}, rng);
    Network::Out outA = net.evaluate(a);
    Network::Out outB = net.evaluate(b);
    CHECK(outA.logits.shape == std::vector<int>{2, 5, 5});
    CHECK(outB.logits.shape == std::vector<int>{2, 9, 9});
    CHECK(std::abs(outA.values[0]) <= 1.0);
    CHECK(std::abs(outB.values[0]) <= 1.0);
}

TEST_CASE("constant-kernel conv on constant input: interior is 9*w*x + b") {
    Conv conv;
    conv.configure(1, 1, 3);
    const double w0 = 0.7, b0 = -0.3, x0 = 1.9;
    conv.w.fill(w0);
    conv.b.fill(b0);
    Tensor x({1, 1, 3, 3});
    x.fill(x0);
    Tensor y = conv.forward(x);
    CHECK(y.at4(0, 0, 1, 1) == doctest::Approx(9 * w0 * x0 + b0).epsilon(1e-12));
    CHECK(y.at4(0, 0, 0, 0) == doctest::Approx(4 * w0 * x0 + b0).epsilon(1e-12));  // corner
    CHECK(y.at4(0, 0, 0, 1) == doctest::Approx(6 * w0 * x0 + b0).epsilon(1e-12));  // edge
}

TEST_CASE("channel mismatch is rejected") {
    std::mt19937_64 rng(3);
    Network net(tiny_config(3, 2), rng);
    Tensor bad = random_tensor({4, 5, 5}, rng);
    CHECK_THROWS(net.evaluate(bad));
}

TEST_CASE("masked softmax closed forms") {
    Tensor logits({4});
    logits[0] = 1.0;
    logits[1] = 1.0;
    auto p = masked_softmax(logits, {0, 1});
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));

    logits[2] = 0.0;
    logits[3] = std::log(3.0);
    auto q = masked_softmax(logits, {2, 3});
    CHECK(q[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(q[1] == doctest::Approx(0.75).epsilon(1e-12));

    // three groups with equal logits: each gets 1/3 and every aliased move
    // shares its group's prior by construction (one prob per group)
    Tensor three({3});
    three.fill(1.0);
    auto r = masked_softmax(three, {0, 1, 2});
    for (double v : r) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-12));

    CHECK_THROWS(masked_softmax(three, {}));
}

TEST_CASE("masked softmax equals a brute-force softmax over distinct legal logits") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        int len = 5 + uniform_int(60, rng);
        Tensor logits({len});
        for (double& v : logits.data) v = (uniform_real(rng) - 0.5) * 20.0;
        std::vector<size_t> cells;
        for (int i = 0; i < len; ++i)
            if (uniform_real(rng) < 0.5) cells.push_back(i);
        if (cells.empty()) cells.push_back(uniform_int(len, rng));
        auto probs = masked_softmax(logits, cells);
        // brute force without max subtraction
        double denom = 0.0;
        for (size_t c : cells) denom += std::exp(logits[c]);
        double sum = 0.0;
        for (size_t i = 0; i < cells.size(); ++i) {
            CHECK(std::abs(probs[i] - std::exp(logits[cells[i]]) / denom) < 1e-12);
            sum += probs[i];
        }
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
}

TEST_CASE("loss closed forms") {
    // target equals prediction, value equals z: loss = entropy(target)
    Tensor logits({2});
    logits[0] = 0.3;
    logits[1] = 0.3;
    Tensor target({2});
    target[0] = 0.5;
    target[1] = 0.5;
    LossTerms t = loss_terms(logits, 1.0, target, 1.0, {0, 1});
    CHECK(t.total() == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    // uniform target, uniform prediction, value 0 vs z 1: ln 2 + 1
    LossTerms u = loss_terms(logits, 0.0, target, 1.0, {0, 1});
    CHECK(u.total() == doctest::Approx(std::log(2.0) + 1.0).epsilon(1e-12));

    // one-hot target on a probability-1 group with exact value: 0
    Tensor one({1});
    one[0] = 2.5;
    Tensor oneTarget({1});
    oneTarget[0] = 1.0;
    LossTerms z = loss_terms(one, -1.0, oneTarget, -1.0, {0});
    CHECK(z.total() == 0.0);

    // target mass on illegal cells rejected
    Tensor bad({2});
    bad[0] = 0.7;
    bad[1] = 0.3;
    CHECK_THROWS(loss_terms(logits, 0.0, bad, 0.0, {0}));
}

TEST_CASE("global pooling of a constant feature map returns (c, c)") {
    Tensor x({1, 2, 3, 4});
    for (int i = 0; i < 12; ++i) x.data[i] = 2.5;          // channel 0
    for (int i = 12; i < 24; ++i) x.data[i] = -1.25;       // channel 1
    Tensor y = global_pool(x, nullptr);
    CHECK(y.data[0] == 2.5);   // mean c0
    CHECK(y.data[1] == -1.25); // mean c1
    CHECK(y.data[2] == 2.5);   // max c0
    CHECK(y.data[3] == -1.25); // max c1
}

TEST_CASE("batchnorm running statistics update with momentum 0.9") {
    BatchNorm bn;
    bn.configure(1);
    Tensor x({2, 1, 1, 2});
    x.data = {1.0, 2.0, 3.0, 6.0};  // mean 3, var 3.5
    BatchNorm::Cache cache;
    bn.forwardTrain(x, cache, true);
    CHECK(bn.runMean[0] == doctest::Approx(0.9 * 0.0 + 0.1 * 3.0).epsilon(1e-12));
    CHECK(bn.runVar[0] == doctest::Approx(0.9 * 1.0 + 0.1 * 3.5).epsilon(1e-12));
}

// ---------------------------------------------------------------------------
// per-layer gradient checks (finite differences with weighted-sum objectives)

namespace {

template <typename Forward>
double fd_input_check(Tensor& x, const Tensor& weights, Forward forward,
                      const Tensor& dx, double eps = 1e-6) {
    // objective L = sum(w .* f(x)); returns worst relative error of dx
    double worst = 0.0;
    std::mt19937_64 rng(99);
    for (int s = 0; s < 40; ++s) {
        int i = uniform_int(static_cast<int>(x.numel()), rng);
        double saved = x[i];
        x[i] = saved + eps;
        Tensor up = forward(x);
        x[i] = saved - eps;
        Tensor down = forward(x);
        x[i] = saved;
        double lUp = 0.0, lDown = 0.0;
        for (size_t k = 0; k < up.numel(); ++k) {
            lUp += weights[k] * up[k];
            lDown += weights[k] * down[k];
        }
        worst = std::max(worst, rel_err((lUp - lDown) / (2 * eps), dx[i]));
    }
    return worst;
}

}  // namespace

TEST_CASE("conv gradient check (weights, bias, input)") {
    std::mt19937_64 rng(5);
    Conv conv;
    conv.configure(2, 3, 3);
    conv.init(rng);
    Tensor x = random_tensor({2, 2, 4, 4}, rng);
    Tensor w = random_tensor({2, 3, 4, 4}, rng);  // objective weights
    conv.zeroGrad();
    Tensor dx = conv.backward(x, w);

    auto fwd = [&](const Tensor& in) { return conv.forward(in); };
    CHECK(fd_input_check(x, w, fwd, dx) < 1e-7);

    const double eps = 1e-6;
    for (int s = 0; s < 40; ++s) {
        int i = uniform_int(static_cast<int>(conv.w.numel()), rng);
        double saved = conv.w[i];
        conv.w[i] = saved + eps;
        Tensor up = conv.forward(x);
        conv.w[i] = saved - eps;
        Tensor down = conv.forward(x);
        conv.w[i] = saved;
        double lUp = 0, lDown = 0;
        for (size_t k = 0; k < up.numel(); ++k) {
            lUp += w[k] * up[k];
            lDown += w[k] * down[k];
        }
        CHECK(rel_err((lUp - lDown) / (2 * eps), conv.gw[i]) < 1e-7);
    }
    for (int i = 0; i < 3; ++i) {
        double saved = conv.b[i];
        conv.b[i] = saved + eps;
        Tensor up = conv.forward(x);
        conv.b[i] = saved - eps;
        Tensor down = conv.forward(x);
        conv.b[i] = saved;
        double lUp = 0, lDown = 0;
        for (size_t k = 0; k < up.numel(); ++k) {
            lUp += w[k] * up[k];
            lDown += w[k] * down[k];
        }
        CHECK(rel_err((lUp - lDown) / (2 * eps), conv.gb[i]) < 1e-7);
    }
}

TEST_CASE("batchnorm train-mode gradient check") {
    std::mt19937_64 rng(6);
    BatchNorm bn;
    bn.configure(3);
    for (int c = 0; c < 3; ++c) {
        bn.gamma[c] = 0.5 + 0.3 * c;
        bn.beta[c] = -0.2 * c;
    }
    Tensor x = random_tensor({2, 3, 3, 3}, rng);
    Tensor w = random_tensor({2, 3, 3, 3}, rng);
    BatchNorm::Cache cache;
    bn.forwardTrain(x, cache, false);
    bn.zeroGrad();
    Tensor dx = bn.backward(cache, w);

    auto fwd = [&](const Tensor& in) {
        BatchNorm::Cache c2;
        return bn.forwardTrain(const_cast<Tensor&>(in), c2, false);
    };
    CHECK(fd_input_check(x, w, fwd, dx) < 1e-6);

    const double eps = 1e-6;
    for (int c = 0; c < 3; ++c) {
        double saved = bn.gamma[c];
        bn.gamma[c] = saved + eps;
        BatchNorm::Cache c1;
        Tensor up = bn.forwardTrain(x, c1, false);
        bn.gamma[c] = saved - eps;
        BatchNorm::Cache c2;
        Tensor down = bn.forwardTrain(x, c2, false);
        bn.gamma[c] = saved;
        double lUp = 0, lDown = 0;
        for (size_t k = 0; k < up.numel(); ++k) {
            lUp += w[k] * up[k];
            lDown += w[k] * down[k];
        }
        CHECK(rel_err((lUp - lDown) / (2 * eps), bn.gGamma[c]) < 1e-6);
    }
}

TEST_CASE("relu, affine, tanh and pooling gradient checks") {
    std::mt19937_64 rng(7);

    // relu (inputs kept away from the kink)
    Tensor x = random_tensor({1, 2, 3, 3}, rng);
    for (double& v : x.data) v += (v >= 0 ? 0.1 : -0.1);
    Tensor w = random_tensor({1, 2, 3, 3}, rng);
    Tensor y = relu(x);
    Tensor dx = relu_backward(y, w);
    auto fwdRelu = [](const Tensor& in) { return relu(in); };
    CHECK(fd_input_check(x, w, fwdRelu, dx) < 1e-7);

    // affine
    Affine fc;
    fc.configure(6, 2);
    fc.init(rng);
    Tensor xa = random_tensor({3, 6}, rng);
    Tensor wa = random_tensor({3, 2}, rng);
    fc.zeroGrad();
    Tensor dxa = fc.backward(xa, wa);
    auto fwdA = [&](const Tensor& in) { return fc.forward(in); };
    CHECK(fd_input_check(xa, wa, fwdA, dxa) < 1e-7);

    // global pool
    Tensor xp = random_tensor({2, 3, 4, 4}, rng);
    Tensor wp = random_tensor({2, 6}, rng);
    std::vector<size_t> argmax;
    global_pool(xp, &argmax);
    Tensor dxp = global_pool_backward(xp, wp, argmax);
    auto fwdP = [](const Tensor& in) { return global_pool(in, nullptr); };
    CHECK(fd_input_check(xp, wp, fwdP, dxp) < 1e-6);

    // tanh as used by the value head: d/da tanh(a) = 1 - tanh^2
    for (double a : {-1.3, -0.2, 0.0, 0.4, 2.0}) {
        double eps = 1e-6;
        double fd = (std::tanh(a + eps) - std::tanh(a - eps)) / (2 * eps);
        double analytic = 1.0 - std::tanh(a) * std::tanh(a);
        CHECK(rel_err(fd, analytic) < 1e-8);
    }
}

TEST_CASE("full-network gradient check: 1 block, 200 sampled parameters") {
    std::mt19937_64 rng(8);
    NetworkConfig cfg = tiny_config(3, 2);
    Network net(cfg, rng);
    FdProblem p = make_problem(cfg, 3, 5, 5, rng);
    double worst = max_grad_rel_err(net, p, 200, rng);
    CHECK(worst < 1e-4);
}

TEST_CASE("duplicating the batch leaves mean-loss gradients unchanged") {
    std::mt19937_64 rng(9);
    NetworkConfig cfg = tiny_config(3, 2);
    Network net(cfg, rng);
    FdProblem p = make_problem(cfg, 2, 4, 4, rng);

    FdProblem doubled;
    doubled.states = Tensor({4, cfg.cState, 4, 4});
    std::copy(p.states.data.begin(), p.states.data.end(), doubled.states.data.begin());
    std::copy(p.states.data.begin(), p.states.data.end(),
              doubled.states.data.begin() + p.states.numel());
    for (int rep = 0; rep < 2; ++rep)
        for (int n = 0; n < 2; ++n) {
            doubled.targets.push_back(p.targets[n]);
            doubled.legalCells.push_back(p.legalCells[n]);
            doubled.zs.push_back(p.zs[n]);
        }

    backprop_batch(net, p);
    std::vector<Tensor> g1;
    for (auto& pr : net.params()) g1.push_back(*pr.grad);
    backprop_batch(net, doubled);
    auto params = net.params();
    for (size_t i = 0; i < params.size(); ++i)
        for (size_t k = 0; k < g1[i].numel(); ++k)
            CHECK(std::abs(g1[i][k] - (*params[i].grad)[k]) < 1e-12);
}

TEST_CASE("optimizer: lr 0 freezes, single step matches -lr*grad, deterministic") {
    std::mt19937_64 rng(10);
    Network net(tiny_config(), rng);
    std::vector<Tensor> before;
    for (auto& p : net.params()) before.push_back(*p.value);

    net.zeroGrads();
    SgdOptimizer opt0;
    OptimizerConfig zeroLr{0.0, 0.9, 0.0};
    // nonzero grads, zero lr
    for (auto& p : net.params()) p.grad->fill(1.0);
    opt0.step(net, zeroLr);
    auto params = net.params();
    for (size_t i = 0; i < params.size(); ++i) CHECK(*params[i].value == before[i]);

    // single scalar: grad 2, lr 0.1 -> delta -0.2 on the first step
    net.zeroGrads();
    net.valueFc.gb[0] = 2.0;
    double b0 = net.valueFc.b[0];
    SgdOptimizer opt1;
    opt1.step(net, OptimizerConfig{0.1, 0.9, 0.0});
    CHECK(net.valueFc.b[0] == doctest::Approx(b0 - 0.2).epsilon(1e-15));

    // determinism: identical nets + identical batches -> bitwise-equal params
    std::mt19937_64 rngA(123), rngB(123);
    NetworkConfig cfg = tiny_config(3, 2);
    Network netA(cfg, rngA), netB(cfg, rngB);
    CHECK(same_parameters(netA, netB));
    std::mt19937_64 prng(77);
    FdProblem prob = make_problem(cfg, 2, 4, 4, prng);
    backprop_batch(netA, prob);
    backprop_batch(netB, prob);
    SgdOptimizer oa, ob;
    OptimizerConfig oc{0.05, 0.9, 1e-4};
    oa.step(netA, oc);
    ob.step(netB, oc);
    CHECK(same_parameters(netA, netB));
}

TEST_CASE("policy logits depend only on the receptive field (eval mode)") {
    std::mt19937_64 rng(12);
    NetworkConfig cfg = tiny_config(3, 2);  // 1 block * 2 layers + stem + 2 head convs = R 5
    Network net(cfg, rng);
    Tensor x = random_tensor({cfg.cState, 9, 9}, rng);
    Network::Out base = net.evaluate(x);
    Tensor perturbed = x;
    perturbed.at3(1, 8, 8) += 3.0;  // Chebyshev distance 8 from (0,0) > radius 5
    Network::Out out = net.evaluate(perturbed);
    CHECK(out.logits.at3(0, 0, 0) == base.logits.at3(0, 0, 0));
    CHECK(out.logits.at3(1, 0, 0) == base.logits.at3(1, 0, 0));
    // while nearby logits do change
    CHECK(out.logits.at3(0, 8, 8) != base.logits.at3(0, 8, 8));
}

TEST_CASE("value stays within [-1, 1] on random inputs") {
    std::mt19937_64 rng(13);
    Network net(tiny_config(), rng);
    for (int t = 0; t < 20; ++t) {
        Tensor x = random_tensor({net.cfg.cState, 6, 6}, rng, 5.0);
        Network::Out out = net.evaluate(x);
        CHECK(std::abs(out.values[0]) <= 1.0);
    }
}
