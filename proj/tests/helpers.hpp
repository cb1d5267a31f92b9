#pragma once

#include "chaoslab/chaos2.hpp"
#include "chaoslab/hermite.hpp"
#include "chaoslab/parallel.hpp"
#include "chaoslab/rng.hpp"

#include <vector>

namespace chaoslab::testing {

// first-chaos weighted samples: F = sigma N, delta_u = F / sigma^2,
// G_k = He_k(1/sigma^2, F/sigma^2)
inline std::vector<WeightedSample> sample_first_chaos(double sigma, std::size_t n,
                                                      std::uint64_t seed, int max_gk = 1,
                                                      int threads = 0) {
    std::vector<WeightedSample> out(n);
    const std::size_t chunk = 65536;
    const std::size_t n_chunks = (n + chunk - 1) / chunk;
    parallel_chunks(n_chunks, threads, [&](std::size_t c) {
        Rng rng(seed, c);
        const std::size_t lo = c * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
            const double F = sigma * rng.next_normal();
            WeightedSample& ws = out[i];
            ws.F = F;
            ws.w = sigma * sigma;
            ws.delta_u = F / (sigma * sigma);
            ws.du_delta_u = 1.0 / (sigma * sigma);
            ws.g.resize(max_gk + 1);
            for (int k = 0; k <= max_gk; ++k)
                ws.g[k] = hermite_gen_eval(k, 1.0 / (sigma * sigma), F / (sigma * sigma));
        }
    });
    return out;
}

} // namespace chaoslab::testing
