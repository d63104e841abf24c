// Times the zero-skipping parallel kernels against the plain reference loops
// and one full local-training pass, on synthetic sparse inputs shaped like
// colored MNIST.
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <vector>

#include <omp.h>

#include "fedgma/common/rng.hpp"
#include "fedgma/fed/client.hpp"
#include "fedgma/fed/server.hpp"
#include "fedgma/nn/kernels.hpp"
#include "fedgma/nn/network.hpp"

using namespace fedgma;

namespace {

double seconds(const std::function<void()>& f, int reps) {
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

// Roughly 6% of entries non-zero, as in a single-channel-coloured digit.
std::vector<double> sparse_inputs(std::size_t rows, std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(rows * dim, 0.0);
    for (auto& v : x)
        if (uniform01(rng) < 0.06) v = uniform01(rng);
    return x;
}

void report(const char* name, double ref, double fast) {
    std::printf("%-22s reference %10.3f ms   parallel %10.3f ms   speedup %6.2fx\n", name, ref * 1e3,
                fast * 1e3, ref / fast);
}

}  // namespace

int main() {
    constexpr std::size_t kBatch = 64, kIn = 2352, kHidden = 128;
    std::printf("threads: %d\n", omp_get_max_threads());

    const auto x = sparse_inputs(kBatch, kIn, 1);
    std::vector<const double*> rows(kBatch);
    for (std::size_t r = 0; r < kBatch; ++r) rows[r] = x.data() + r * kIn;
    std::vector<double> w(kIn * kHidden), b(kHidden, 0.1);
    Rng rng(2);
    for (auto& v : w) v = uniform(rng, -0.02, 0.02);

    nn::Matrix out, delta(kBatch, kHidden), dx;
    for (std::size_t i = 0; i < delta.values().size(); ++i) delta.data()[i] = uniform(rng, -1.0, 1.0);
    std::vector<double> gw(kIn * kHidden), gb(kHidden);

    report("dense_forward",
           seconds([&] { nn::reference::dense_forward(rows, kIn, w.data(), b.data(), kHidden, out); }, 20),
           seconds([&] { nn::dense_forward(rows, kIn, w.data(), b.data(), kHidden, out); }, 200));
    report("dense_weight_grad",
           seconds([&] { nn::reference::dense_weight_grad(rows, kIn, delta, gw.data(), gb.data()); }, 20),
           seconds([&] { nn::dense_weight_grad(rows, kIn, delta, gw.data(), gb.data()); }, 200));
    report("dense_input_grad",
           seconds([&] { nn::reference::dense_input_grad(delta, w.data(), kIn, dx); }, 20),
           seconds([&] { nn::dense_input_grad(delta, w.data(), kIn, dx); }, 200));

    // One client's local training: 6000 samples, 3 epochs, batch 64.
    const nn::Network net(nn::colored_mnist_mlp(1));
    constexpr std::size_t kSamples = 6000;
    const auto inputs = sparse_inputs(kSamples, kIn, 3);
    std::vector<double> targets(kSamples);
    for (std::size_t i = 0; i < kSamples; ++i) targets[i] = static_cast<double>(i % 2);
    const ParamVector params = net.init_params(4);

    nn::Workspace ws;
    std::vector<std::size_t> batch_rows(kBatch);
    std::iota(batch_rows.begin(), batch_rows.end(), std::size_t{0});
    const nn::BatchView batch{inputs.data(), kIn, batch_rows, targets.data(), 1};
    std::vector<double> grad(net.param_count());
    std::vector<double> p(params.values());
    const double step = seconds([&] { net.gradient(p, batch, grad, ws); }, 200);
    const double sgd = seconds([&] { nn::sgd_step_inplace(p, grad, 1e-9); }, 200);
    std::printf("%-22s %10.3f ms\n%-22s %10.3f ms\n", "gradient (batch 64)", step * 1e3, "sgd_step", sgd * 1e3);

    std::vector<fed::ClientData> clients;
    for (int c = 0; c < 2; ++c) clients.push_back({c, inputs, kIn, targets, 1});
    fed::ServerState state;
    state.params = params;
    state.config.clients_per_round = 2;
    const double serial = seconds(
        [&] { fed::run_round(state, clients, net, fed::Algorithm::fedgma, 5, fed::Execution::serial); }, 1);
    const double parallel = seconds(
        [&] { fed::run_round(state, clients, net, fed::Algorithm::fedgma, 5, fed::Execution::parallel); }, 1);
    report("round (2 x 6000)", serial, parallel);
    return 0;
}
