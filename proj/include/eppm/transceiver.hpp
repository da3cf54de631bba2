#pragma once

#include <span>
#include <vector>

#include "eppm/constellation.hpp"

namespace eppm {

/// One symbol interval: q slot amplitudes, nominally 0 or a_pulse before noise.
struct SlotFrame {
    std::vector<double> amplitudes;
    double a_pulse = 1.0;
};

/// Differential correlation statistics Z_j = <x,c_j> - Gamma <x,complement_j>
/// with Gamma = lambda/(k - lambda).  For AEPPM the vector holds the doubled
/// decision set {Z_1..Z_q, -Z_1..-Z_q}; for PPM, Gamma = 0 and Z is the plain
/// correlation vector.
struct DecisionStatistics {
    std::vector<double> z;
    double gamma_weight = 0.0;
};

/// Emit the codeword (by index, mapped or not) as a slot-amplitude frame.
SlotFrame modulate(int cw_index, const Constellation& c, double a_pulse = 1.0);

/// Same, writing into a caller-owned buffer (resized to q).
void modulate_into(int cw_index, const Constellation& c, std::vector<double>& amplitudes,
                   double a_pulse = 1.0);

/// Receiver statistics for PPM/EPPM/AEPPM; throws Error(scheme_mismatch) for
/// schemes decided by plain per-codeword correlation (MPPM) or threshold (OOK).
DecisionStatistics decision_statistics(const SlotFrame& x, const Constellation& c);

/// Reusable maximum-statistic decision engine.  Precomputes the per-candidate
/// slot lists once so the per-frame cost is a handful of sparse dot products;
/// safe to keep one instance per worker thread.
///
/// Decision rules, all restricted to mapped codewords and breaking ties in
/// favor of the lowest codeword index:
///   PPM/MPPM/EPPM  argmax of the plain correlation (for EPPM this picks the
///                  same index as argmax Z_j, since Z is an increasing affine
///                  function of the correlation at fixed input)
///   AEPPM          argmax over {Z_j, -Z_j}; a -Z_j winner is codeword q+j
///   OOK and ad-hoc codebooks: minimum Euclidean distance
class Demodulator {
  public:
    explicit Demodulator(const Constellation& c);

    int operator()(std::span<const double> amplitudes) const;

  private:
    struct Candidate {
        int cw_index = 0;
        std::vector<int> slots; // on-slots of the correlated base codeword
        double bias = 0.0;      // additive energy correction (min-distance rule)
    };

    const Constellation* c_;
    std::vector<Candidate> candidates_;
    double gamma_weight_ = 0.0;
    bool aeppm_ = false;
    int half_ = 0; // mapped base rows (= mapped complements) for AEPPM
};

/// One-shot decision; equivalent to constructing a Demodulator and applying it.
int demodulate(const SlotFrame& x, const Constellation& c);

} // namespace eppm
