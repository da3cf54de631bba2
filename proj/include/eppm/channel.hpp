#pragma once

#include <cstdint>
#include <vector>

#include "eppm/constellation.hpp"
#include "eppm/transceiver.hpp"

namespace eppm {

/// SNR normalization shared by simulation and the analytic bounds: unit pulse
/// amplitude and per-slot noise variance 1/(4*gamma*eta), so that codewords at
/// Hamming distance d are confused with probability (1/2)erfc(sqrt(d*gamma*eta/2)).
struct ChannelParams {
    double gamma = 0.0;
    double eta = 0.0;
    double sigma2 = 0.0;

    ChannelParams(double gamma, double eta); // throws Error(non_positive)
};

/// Average SNR of an optical intensity link: rho^2 P0^2 / (N0 Rb).
double gamma_fso(double rho, double p0, double n0, double rb);

/// Average SNR of an impulse-radio link: E_T Rb / (2 Delta_f N0).
double gamma_uwb(double e_t, double rb, double delta_f, double n0);

/// Counter-based Gaussian noise source.  The whole draw sequence is a pure
/// function of (seed, stream, trial), so trials can be farmed out to any
/// number of workers without changing a single sample.
class NoiseStream {
  public:
    NoiseStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial = 0) noexcept;

    std::uint64_t next_u64() noexcept;
    double uniform() noexcept;  // [0, 1)
    double gaussian() noexcept; // standard normal, Box-Muller pairs

  private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Adds independent zero-mean Gaussian noise of variance sigma2 to every slot.
SlotFrame add_awgn(const SlotFrame& x, double sigma2, NoiseStream& rng);

struct MonteCarloConfig {
    std::uint64_t seed = 1;
    long long min_trials = 10'000;
    long long max_trials = 10'000'000;
    long long target_errors = 100; // bit errors; 0 disables early stop
    double target_ber = 0.0;       // when > 0, also require trials >= 10/target_ber
    int workers = 1;
    long long batch_size = 8192; // stop checks happen only at batch boundaries

    long long required_trial_floor() const; // max(min_trials, ceil(10/target_ber))
};

struct BerEstimate {
    long long trials = 0;
    long long symbol_errors = 0;
    long long bit_errors = 0;
    double ser = 0.0;
    double ber = 0.0;
    double ci95_halfwidth = 0.0; // on BER, normal approximation
};

/// Monte-Carlo run at one linear-SNR point: uniform mapped symbols through
/// modulate -> AWGN -> demodulate, counting symbol and bit errors.  Stops at
/// the first batch boundary where either max_trials is reached or
/// target_errors bit errors have accumulated past the trial floor.  Results
/// depend only on (cfg.seed, point_index) and the constellation.
BerEstimate run_ber_point(const Constellation& c, double gamma, const MonteCarloConfig& cfg,
                          std::uint64_t point_index = 0);

/// One estimate per dB point; point i uses point_index = i.
std::vector<BerEstimate> run_ber_sweep(const Constellation& c,
                                       const std::vector<double>& gamma_db_list,
                                       const MonteCarloConfig& cfg);

} // namespace eppm
