#include "cogber/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace cogber {

namespace {

// Fixed number of blocks evaluated between stopping-rule checks. Independent
// of the stream count so the stopping block is too.
constexpr std::int64_t kChunkBlocks = 1024;

struct SimContext {
    std::vector<HopParams> hops;
    Constellation constellation;
    double mu = 0.0;
    int block_length = 0;

    explicit SimContext(const SimConfig& cfg)
        : hops(build_chain_params(cfg.topology, cfg.alpha, cfg.mu, cfg.csi)),
          constellation(build_constellation(make_mod_params_bits(cfg.mod_order))),
          mu(cfg.mu),
          block_length(cfg.block_length) {
        if (cfg.block_length < 1 || cfg.min_bit_errors < 1 || cfg.max_blocks < 1 ||
            cfg.streams < 1) {
            throw std::invalid_argument("SimConfig: budgets and stream count must be >= 1");
        }
    }

    static int make_mod_params_bits(int order) {
        if (order < 2 || (order & (order - 1)) != 0) {
            throw std::invalid_argument("SimConfig: modulation order must be a power of two >= 2");
        }
        int q = 0;
        while ((1 << (q + 1)) <= order) {
            ++q;
        }
        return q;
    }
};

BlockChannels sample_block_impl(std::span<const HopParams> hops, double mu,
                                CounterRng& rng) {
    BlockChannels block;
    block.hops.reserve(hops.size());
    for (const HopParams& hp : hops) {
        HopChannels ch;
        ch.h_hat = rng.next_cn(1.0 / hp.lambda_tr);
        ch.eps = hp.sigma_tr > 0.0 ? rng.next_cn(hp.sigma_tr)
                                   : std::complex<double>(0.0, 0.0);
        ch.h = ch.h_hat + ch.eps;
        ch.h_hat_tp = rng.next_cn(1.0 / hp.lambda_tp);
        ch.eps_tp = hp.sigma_tp > 0.0 ? rng.next_cn(hp.sigma_tp)
                                      : std::complex<double>(0.0, 0.0);
        ch.h_tp = ch.h_hat_tp + ch.eps_tp;
        ch.power = mu / std::norm(ch.h_hat_tp);
        block.hops.push_back(ch);
    }
    return block;
}

TrialCounts run_trial(const SimContext& ctx, CounterRng& rng) {
    const BlockChannels block = sample_block_impl(ctx.hops, ctx.mu, rng);

    const int q = ctx.constellation.bits_per_symbol;
    const std::size_t n_bits = static_cast<std::size_t>(ctx.block_length) * q;
    std::vector<std::uint8_t> source(n_bits);
    for (std::uint8_t& b : source) {
        b = static_cast<std::uint8_t>(rng.next_bit());
    }

    std::vector<std::uint8_t> bits = source;
    for (std::size_t hop = 1; hop <= block.hops.size(); ++hop) {
        bits = run_hop(block, hop, ctx.constellation, bits, 1.0, rng);
    }

    TrialCounts counts;
    counts.bits = static_cast<std::int64_t>(n_bits);
    for (std::size_t i = 0; i < n_bits; ++i) {
        counts.errors += (bits[i] != source[i]) ? 1 : 0;
    }
    for (const HopChannels& ch : block.hops) {
        counts.exceedances += (std::norm(ch.h_tp) > std::norm(ch.h_hat_tp)) ? 1 : 0;
        ++counts.tx_events;
    }
    return counts;
}

// Evaluates fn(block_index) for blocks [first, first + count) using up to
// `streams` worker threads with a static round-robin assignment.
template <typename Fn>
void for_each_block(std::int64_t first, std::int64_t count, int streams, Fn&& fn) {
    const int workers = static_cast<int>(
        std::min<std::int64_t>(streams, std::max<std::int64_t>(count, 1)));
    if (workers <= 1) {
        for (std::int64_t b = 0; b < count; ++b) {
            fn(first + b);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::int64_t b = w; b < count; b += workers) {
                fn(first + b);
            }
        });
    }
    for (std::thread& t : pool) {
        t.join();
    }
}

} // namespace

BlockChannels sample_block(std::span<const HopParams> hops, double mu,
                           CounterRng& rng) {
    return sample_block_impl(hops, mu, rng);
}

BlockChannels sample_block(const SimConfig& cfg, CounterRng& rng) {
    const SimContext ctx(cfg);
    return sample_block_impl(ctx.hops, ctx.mu, rng);
}

std::vector<std::uint8_t> run_hop(const BlockChannels& block, std::size_t hop_index,
                                  const Constellation& c,
                                  std::span<const std::uint8_t> tx_bits,
                                  double noise_density, CounterRng& rng) {
    if (hop_index < 1 || hop_index > block.hops.size()) {
        throw std::invalid_argument("run_hop: hop index out of range");
    }
    const HopChannels& ch = block.hops[hop_index - 1];
    const double amplitude = std::sqrt(ch.power);

    std::vector<std::complex<double>> symbols = modulate(c, tx_bits);
    for (std::complex<double>& x : symbols) {
        x = ch.h * amplitude * x + rng.next_cn(noise_density);
    }
    return demodulate(c, symbols, ch.h_hat, amplitude);
}

TrialCounts run_chain_trial(const SimConfig& cfg, CounterRng& rng) {
    const SimContext ctx(cfg);
    return run_trial(ctx, rng);
}

BerEstimate estimate_ber(const SimConfig& cfg) {
    const SimContext ctx(cfg);

    BerEstimate est;
    std::int64_t exceedances = 0;
    std::int64_t tx_events = 0;
    std::vector<TrialCounts> chunk(kChunkBlocks);
    std::int64_t next_block = 0;
    bool reached_target = false;
    while (next_block < cfg.max_blocks && !reached_target) {
        const std::int64_t count =
            std::min(kChunkBlocks, cfg.max_blocks - next_block);
        for_each_block(next_block, count, cfg.streams, [&](std::int64_t b) {
            CounterRng rng(cfg.seed, static_cast<std::uint64_t>(b));
            chunk[b - next_block] = run_trial(ctx, rng);
        });
        // Sequential scan of per-block results keeps the stopping block (and
        // therefore every count) independent of how the chunk was parallelized.
        for (std::int64_t i = 0; i < count; ++i) {
            const TrialCounts& t = chunk[i];
            est.errors += t.errors;
            est.bits += t.bits;
            exceedances += t.exceedances;
            tx_events += t.tx_events;
            ++est.blocks;
            if (est.errors >= cfg.min_bit_errors) {
                reached_target = true;
                break;
            }
        }
        next_block += count;
    }

    if (est.bits > 0) {
        est.ber = static_cast<double>(est.errors) / static_cast<double>(est.bits);
        est.std_error =
            std::sqrt(est.ber * (1.0 - est.ber) / static_cast<double>(est.bits));
    }
    if (tx_events > 0) {
        est.interference_exceedance =
            static_cast<double>(exceedances) / static_cast<double>(tx_events);
    }
    est.budget_exhausted = !reached_target;
    return est;
}

double estimate_interference_probability(const SimConfig& cfg) {
    const SimContext ctx(cfg);
    const std::int64_t n_hops = static_cast<std::int64_t>(ctx.hops.size());

    std::vector<std::int64_t> chunk(kChunkBlocks);
    std::int64_t exceed = 0;
    std::int64_t blocks = 0;
    while (blocks < cfg.max_blocks) {
        const std::int64_t count = std::min(kChunkBlocks, cfg.max_blocks - blocks);
        for_each_block(blocks, count, cfg.streams, [&](std::int64_t b) {
            CounterRng rng(cfg.seed, static_cast<std::uint64_t>(b));
            const BlockChannels block = sample_block_impl(ctx.hops, ctx.mu, rng);
            std::int64_t c = 0;
            for (const HopChannels& ch : block.hops) {
                c += (std::norm(ch.h_tp) > std::norm(ch.h_hat_tp)) ? 1 : 0;
            }
            chunk[b - blocks] = c;
        });
        for (std::int64_t i = 0; i < count; ++i) {
            exceed += chunk[i];
        }
        blocks += count;
    }
    return static_cast<double>(exceed) /
           static_cast<double>(blocks * n_hops);
}

} // namespace cogber
