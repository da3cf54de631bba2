#include "eppm/transceiver.hpp"

#include <string>

#include "eppm/errors.hpp"

namespace eppm {

namespace {

void check_frame(const SlotFrame& x, const Constellation& c) {
    if (static_cast<int>(x.amplitudes.size()) != c.q)
        throw Error(errc::bad_length, "frame has " + std::to_string(x.amplitudes.size()) +
                                          " slots, constellation expects " + std::to_string(c.q));
}

std::vector<int> on_slots(const Codeword& cw) {
    std::vector<int> slots;
    for (int l = 0; l < static_cast<int>(cw.size()); ++l)
        if (cw[l]) slots.push_back(l);
    return slots;
}

double sparse_dot(std::span<const double> x, const std::vector<int>& slots) {
    double acc = 0.0;
    for (const int s : slots) acc += x[s];
    return acc;
}

} // namespace

SlotFrame modulate(int cw_index, const Constellation& c, double a_pulse) {
    SlotFrame frame;
    frame.a_pulse = a_pulse;
    modulate_into(cw_index, c, frame.amplitudes, a_pulse);
    return frame;
}

void modulate_into(int cw_index, const Constellation& c, std::vector<double>& amplitudes,
                   double a_pulse) {
    if (cw_index < 0 || cw_index >= c.m)
        throw Error(errc::index_out_of_range,
                    "codeword index " + std::to_string(cw_index) + " outside [0, " +
                        std::to_string(c.m) + ")");
    amplitudes.assign(c.q, 0.0);
    const Codeword& cw = c.codewords[cw_index];
    for (int l = 0; l < c.q; ++l)
        if (cw[l]) amplitudes[l] = a_pulse;
}

DecisionStatistics decision_statistics(const SlotFrame& x, const Constellation& c) {
    if (c.scheme != Scheme::ppm && c.scheme != Scheme::eppm && c.scheme != Scheme::aeppm)
        throw Error(errc::scheme_mismatch,
                    "differential correlation statistics are defined for PPM/EPPM/AEPPM, not " +
                        std::string(scheme_name(c.scheme)));
    check_frame(x, c);

    DecisionStatistics stats;
    stats.gamma_weight =
        c.lambda > 0 ? static_cast<double>(c.lambda) / (c.k - c.lambda) : 0.0;

    double total = 0.0;
    for (const double v : x.amplitudes) total += v;

    // Correlate against the q base rows; <x, complement_j> = total - <x, c_j>.
    stats.z.resize(c.scheme == Scheme::aeppm ? 2 * c.q : c.q);
    for (int j = 0; j < c.q; ++j) {
        double corr = 0.0;
        const Codeword& cw = c.codewords[j];
        for (int l = 0; l < c.q; ++l)
            if (cw[l]) corr += x.amplitudes[l];
        stats.z[j] = corr - stats.gamma_weight * (total - corr);
    }
    if (c.scheme == Scheme::aeppm)
        for (int j = 0; j < c.q; ++j) stats.z[c.q + j] = -stats.z[j];
    return stats;
}

Demodulator::Demodulator(const Constellation& c) : c_(&c) {
    const int mapped = c.mapped_count();
    gamma_weight_ = c.lambda > 0 ? static_cast<double>(c.lambda) / (c.k - c.lambda) : 0.0;
    aeppm_ = c.scheme == Scheme::aeppm;

    if (aeppm_) {
        // Correlate only the mapped base rows; each yields the +Z_j and -Z_j
        // candidates (codeword indices j and q + j).
        half_ = mapped / 2;
        candidates_.reserve(half_);
        for (int j = 0; j < half_; ++j)
            candidates_.push_back({j, on_slots(c.codewords[j]), 0.0});
        return;
    }

    const bool min_distance = c.scheme == Scheme::ook ||
                              (c.scheme != Scheme::ppm && c.scheme != Scheme::mppm &&
                               c.scheme != Scheme::eppm);
    candidates_.reserve(mapped);
    for (int v = 0; v < mapped; ++v) {
        const int cw = c.codeword_index(v);
        Candidate cand{cw, on_slots(c.codewords[cw]), 0.0};
        if (min_distance)
            cand.bias = -0.5 * static_cast<double>(cand.slots.size());
        candidates_.push_back(std::move(cand));
    }
}

int Demodulator::operator()(std::span<const double> x) const {
    if (!aeppm_) {
        int best = candidates_.front().cw_index;
        double best_score = sparse_dot(x, candidates_.front().slots) + candidates_.front().bias;
        for (std::size_t i = 1; i < candidates_.size(); ++i) {
            const double score = sparse_dot(x, candidates_[i].slots) + candidates_[i].bias;
            if (score > best_score) {
                best_score = score;
                best = candidates_[i].cw_index;
            }
        }
        return best;
    }

    double total = 0.0;
    for (const double v : x) total += v;
    // Ascending codeword index = all +Z_j first, then the -Z_j complements.
    int best = 0;
    double best_score = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < half_; ++j) {
            const double corr = sparse_dot(x, candidates_[j].slots);
            double z = corr - gamma_weight_ * (total - corr);
            if (pass == 1) z = -z;
            const int cw = pass == 0 ? j : c_->q + j;
            if ((pass == 0 && j == 0) || z > best_score) {
                best_score = z;
                best = cw;
            }
        }
    }
    return best;
}

int demodulate(const SlotFrame& x, const Constellation& c) {
    check_frame(x, c);
    return Demodulator(c)(x.amplitudes);
}

} // namespace eppm
