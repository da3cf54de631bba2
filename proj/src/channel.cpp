#include "eppm/channel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <numbers>
#include <string>

#include "eppm/errors.hpp"

namespace eppm {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw Error(errc::non_positive, std::string(name) + " must be > 0");
}

// SplitMix64 output mixer: a bijective avalanche function on 64-bit words.
std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

} // namespace

ChannelParams::ChannelParams(double gamma_, double eta_) : gamma(gamma_), eta(eta_) {
    require_positive(gamma, "gamma");
    require_positive(eta, "eta");
    sigma2 = 1.0 / (4.0 * gamma * eta);
}

double gamma_fso(double rho, double p0, double n0, double rb) {
    require_positive(rho, "rho");
    require_positive(p0, "p0");
    require_positive(n0, "n0");
    require_positive(rb, "rb");
    return rho * rho * p0 * p0 / (n0 * rb);
}

double gamma_uwb(double e_t, double rb, double delta_f, double n0) {
    require_positive(e_t, "e_t");
    require_positive(rb, "rb");
    require_positive(delta_f, "delta_f");
    require_positive(n0, "n0");
    return e_t * rb / (2.0 * delta_f * n0);
}

NoiseStream::NoiseStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) noexcept {
    state_ = mix64(seed + golden_gamma);
    state_ = mix64(state_ ^ (stream + golden_gamma));
    state_ = mix64(state_ ^ (trial + golden_gamma));
}

std::uint64_t NoiseStream::next_u64() noexcept {
    state_ += golden_gamma;
    return mix64(state_);
}

double NoiseStream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double NoiseStream::gaussian() noexcept {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]: keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

SlotFrame add_awgn(const SlotFrame& x, double sigma2, NoiseStream& rng) {
    require_positive(sigma2, "sigma2");
    const double sigma = std::sqrt(sigma2);
    SlotFrame y = x;
    for (double& v : y.amplitudes) v += sigma * rng.gaussian();
    return y;
}

long long MonteCarloConfig::required_trial_floor() const {
    long long floor_trials = min_trials;
    if (target_ber > 0.0)
        floor_trials = std::max(floor_trials,
                                static_cast<long long>(std::ceil(10.0 / target_ber)));
    return floor_trials;
}

namespace {

struct BatchCounts {
    long long symbol_errors = 0;
    long long bit_errors = 0;
};

// Runs trials [first, first + count) of one SNR point.  Every trial derives a
// fresh noise stream from (seed, point, trial), so the batch decomposition is
// invisible in the results.
BatchCounts run_batch(const Constellation& c, const Demodulator& demod, double sigma,
                      const MonteCarloConfig& cfg, std::uint64_t point_index,
                      long long first, long long count) {
    BatchCounts out;
    const int bits = c.bits_per_symbol;
    const int shift = 64 - bits;

    std::vector<int> value_to_cw(c.mapped_count());
    for (int v = 0; v < c.mapped_count(); ++v) value_to_cw[v] = c.codeword_index(v);
    std::vector<int> cw_to_value(c.m);
    for (int cw = 0; cw < c.m; ++cw) cw_to_value[cw] = c.symbol_value(cw);

    std::vector<double> y(c.q);
    for (long long t = first; t < first + count; ++t) {
        NoiseStream rng(cfg.seed, point_index, static_cast<std::uint64_t>(t));
        const int value = static_cast<int>(rng.next_u64() >> shift);
        const int cw = value_to_cw[value];
        const Codeword& code = c.codewords[cw];
        for (int l = 0; l < c.q; ++l)
            y[l] = (code[l] ? 1.0 : 0.0) + sigma * rng.gaussian();
        const int decided = demod(y);
        if (decided != cw) {
            ++out.symbol_errors;
            out.bit_errors +=
                std::popcount(static_cast<unsigned>(value ^ cw_to_value[decided]));
        }
    }
    return out;
}

} // namespace

BerEstimate run_ber_point(const Constellation& c, double gamma, const MonteCarloConfig& cfg,
                          std::uint64_t point_index) {
    const ChannelParams params(gamma, c.eta());
    const double sigma = std::sqrt(params.sigma2);
    const Demodulator demod(c);

    const long long batch = std::max<long long>(1, cfg.batch_size);
    const long long floor_trials = cfg.required_trial_floor();
    const int workers = std::max(1, cfg.workers);

    BerEstimate est;
    bool done = false;
    long long next_first = 0;
    while (!done && next_first < cfg.max_trials) {
        // One wave of batches, evaluated in parallel but folded in order so the
        // stopping decision is identical for every worker count.
        std::vector<std::pair<long long, long long>> ranges; // (first, count)
        for (int w = 0; w < workers && next_first < cfg.max_trials; ++w) {
            const long long count = std::min(batch, cfg.max_trials - next_first);
            ranges.emplace_back(next_first, count);
            next_first += count;
        }

        std::vector<BatchCounts> counts(ranges.size());
        if (ranges.size() == 1) {
            counts[0] = run_batch(c, demod, sigma, cfg, point_index, ranges[0].first,
                                  ranges[0].second);
        } else {
            std::vector<std::future<BatchCounts>> futures;
            futures.reserve(ranges.size());
            for (const auto& [first, count] : ranges)
                futures.push_back(std::async(std::launch::async, [&, first, count] {
                    return run_batch(c, demod, sigma, cfg, point_index, first, count);
                }));
            for (std::size_t i = 0; i < futures.size(); ++i) counts[i] = futures[i].get();
        }

        for (std::size_t i = 0; i < ranges.size() && !done; ++i) {
            est.trials = ranges[i].first + ranges[i].second;
            est.symbol_errors += counts[i].symbol_errors;
            est.bit_errors += counts[i].bit_errors;
            if (est.trials >= cfg.max_trials)
                done = true;
            else if (cfg.target_errors > 0 && est.bit_errors >= cfg.target_errors &&
                     est.trials >= floor_trials)
                done = true;
        }
    }

    const double nbits = static_cast<double>(est.trials) * c.bits_per_symbol;
    est.ser = est.trials > 0 ? static_cast<double>(est.symbol_errors) / est.trials : 0.0;
    est.ber = est.trials > 0 ? static_cast<double>(est.bit_errors) / nbits : 0.0;
    if (est.trials > 0)
        est.ci95_halfwidth = 1.96 * std::sqrt(est.ber * (1.0 - est.ber) / nbits);
    return est;
}

std::vector<BerEstimate> run_ber_sweep(const Constellation& c,
                                       const std::vector<double>& gamma_db_list,
                                       const MonteCarloConfig& cfg) {
    if (gamma_db_list.empty())
        throw Error(errc::bad_params, "empty SNR grid");
    std::vector<BerEstimate> out;
    out.reserve(gamma_db_list.size());
    for (std::size_t i = 0; i < gamma_db_list.size(); ++i) {
        const double gamma = std::pow(10.0, gamma_db_list[i] / 10.0);
        out.push_back(run_ber_point(c, gamma, cfg, static_cast<std::uint64_t>(i)));
    }
    return out;
}

} // namespace eppm
