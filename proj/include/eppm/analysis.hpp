#pragma once

#include <functional>
#include <vector>

#include "eppm/constellation.hpp"

namespace eppm {

/// Probability that Gaussian noise flips a decision between two codewords at
/// Hamming distance d: (1/2) erfc(sqrt(d * gamma * eta / 2)).  Every bound in
/// this module is a weighted sum of these terms, so specialized closed forms
/// and the generic spectrum evaluation agree bit-for-bit.  d may be fractional
/// (the term is convex in d, which makes mean-distance comparisons meaningful).
double pairwise_error_term(double d, double gamma_eta);

/// Union bound on symbol error probability: average over all codewords of the
/// summed pairwise terms, evaluated from the distance spectrum.
double union_bound_generic(const Constellation& c, double gamma);
double union_bound_generic(const DistanceProfile& profile, int m, double eta, double gamma);

/// PPM closed form ((q-1)/2) erfc(sqrt(gamma eta)) with eta = log2(q)/q.
double union_bound_ppm(int q, double gamma);

/// MPPM closed form: sum over overlaps kp = 1..min(k, q-k) of
/// C(k,kp) C(q-k,kp) (1/2) erfc(sqrt(kp gamma eta)), eta = log2(m_mapped)/q.
double union_bound_mppm(int q, int k, int m_mapped, double gamma);

/// Leading-term approximation (k(q-k)/2) erfc(sqrt(gamma eta)).
double union_bound_mppm_high_snr(int q, int k, int m_mapped, double gamma);

/// Equidistant closed form ((q-1)/2) erfc(sqrt((k-lambda) gamma eta)).
double union_bound_eppm(int q, int k, int lambda, int m_mapped, double gamma);

/// Bit error probability from symbol error probability when every symbol error
/// lands on a uniformly random wrong symbol: ber = ser * m / (2(m-1)).
double ber_from_ser_equidistant(double ser, int m);

/// Mapping-aware union bound on bit error probability: each pairwise term is
/// weighted by the Hamming distance of the symbol labels over bits-per-symbol.
/// best_case is the optimistic floor ser/log2(m) (one bit per symbol error).
struct MappedBerBound {
    double ber = 0.0;
    double best_case = 0.0;
};

MappedBerBound ber_bound_mapped(const Constellation& c, double gamma);

/// Smallest linear gamma (returned in dB) where ber_of_gamma crosses
/// target_ber, by bisection on the decade scale to 1e-6 relative gamma.
double required_gamma_db(const std::function<double(double)>& ber_of_gamma, double target_ber);

/// Parameter tuple the CLI and frontier share; bounds need (q,k,lambda,m) only.
struct SchemeSpec {
    Scheme scheme = Scheme::ppm;
    int q = 0;
    int k = 0;      // pulses per symbol (MPPM/EPPM); 1 for PPM/OOK
    int lambda = 0; // design cross-correlation (EPPM/AEPPM)
    int m = 0;      // mapped alphabet size, a power of two

    double eta() const noexcept;
};

/// Closed-form bounds per scheme.  AEPPM's symbol bound sums the three exact
/// distance classes of the doubled codebook (2(k-lambda) to the other rows,
/// q - 2(k-lambda) to their complements, q to its own complement); its bit
/// bound uses the uniform-wrong-symbol relation as a worst case.  MPPM's bit
/// bound is the best case ser/log2(m).
double scheme_ser_bound(const SchemeSpec& spec, double gamma);
double scheme_ber_bound(const SchemeSpec& spec, double gamma);

struct BoundPoint {
    double gamma_db = 0.0;
    double ser_bound = 0.0;
    double ber_bound = 0.0;
};

struct BoundCurve {
    SchemeSpec spec;
    std::vector<BoundPoint> points;
};

BoundCurve bound_curve(const SchemeSpec& spec, const std::vector<double>& gamma_db_list);

/// Inclusive dB grid start, start+step, ..., up to stop (within half a step).
std::vector<double> make_gamma_grid(double start_db, double stop_db, double step_db);

struct FrontierPoint {
    Scheme scheme = Scheme::ppm;
    int q = 0;
    double eta = 0.0;
    double required_gamma_db = 0.0;
};

/// Bandwidth-efficiency frontier: one (eta, required gamma) point per spec.
std::vector<FrontierPoint> spectral_efficiency_frontier(const std::vector<SchemeSpec>& specs,
                                                        double target_ber);

/// The stock comparison set: PPM q = 4..256 in octaves, EPPM/AEPPM over the
/// difference-set family q in {7,11,19,35,67,131,263}, an MPPM ladder with
/// k = q/2 for q in {8,12,16,20}, and single-point OOK.
std::vector<SchemeSpec> default_frontier_specs();

/// (q, (q-1)/2, (q-3)/4) design parameters for q = 3 mod 4.
BibdParams family_params(int q);

} // namespace eppm
