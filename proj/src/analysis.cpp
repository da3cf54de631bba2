#include "eppm/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "eppm/errors.hpp"

namespace eppm {

double pairwise_error_term(double d, double gamma_eta) {
    return 0.5 * std::erfc(std::sqrt(0.5 * d * gamma_eta));
}

double union_bound_generic(const DistanceProfile& profile, int m, double eta, double gamma) {
    const double gamma_eta = gamma * eta;
    double acc = 0.0;
    for (const auto& [d, count] : profile.spectrum)
        acc += (static_cast<double>(count) / m) * pairwise_error_term(d, gamma_eta);
    return acc;
}

double union_bound_generic(const Constellation& c, double gamma) {
    return union_bound_generic(distance_profile(c), c.m, c.eta(), gamma);
}

double union_bound_ppm(int q, double gamma) {
    if (q < 2) throw Error(errc::bad_params, "PPM bound needs q >= 2");
    const double eta = std::log2(static_cast<double>(q)) / q;
    return (q - 1) * pairwise_error_term(2, gamma * eta);
}

double union_bound_mppm(int q, int k, int m_mapped, double gamma) {
    if (q < 2 || k < 1 || k >= q)
        throw Error(errc::bad_params, "MPPM bound needs q >= 2 and 1 <= k < q");
    const double gamma_eta = gamma * std::log2(static_cast<double>(m_mapped)) / q;
    const int terms = std::min(k, q - k);
    double acc = 0.0;
    for (int kp = 1; kp <= terms; ++kp) {
        const double coeff = static_cast<double>(binomial(k, kp)) * binomial(q - k, kp);
        acc += coeff * pairwise_error_term(2LL * kp, gamma_eta);
    }
    return acc;
}

double union_bound_mppm_high_snr(int q, int k, int m_mapped, double gamma) {
    const double gamma_eta = gamma * std::log2(static_cast<double>(m_mapped)) / q;
    return static_cast<double>(k) * (q - k) * pairwise_error_term(2, gamma_eta);
}

double union_bound_eppm(int q, int k, int lambda, int m_mapped, double gamma) {
    BibdParams{q, k, lambda}.require_admissible();
    const double gamma_eta = gamma * std::log2(static_cast<double>(m_mapped)) / q;
    return (q - 1) * pairwise_error_term(2LL * (k - lambda), gamma_eta);
}

double ber_from_ser_equidistant(double ser, int m) {
    if (m < 2) throw Error(errc::bad_params, "alphabet size must be >= 2");
    return ser * m / (2.0 * (m - 1));
}

MappedBerBound ber_bound_mapped(const Constellation& c, double gamma) {
    const double gamma_eta = gamma * c.eta();
    const int mapped = c.mapped_count();
    const int bits = c.bits_per_symbol;

    MappedBerBound out;
    double acc = 0.0;
    for (int v = 0; v < mapped; ++v) {
        const Codeword& a = c.codewords[c.codeword_index(v)];
        for (int w = 0; w < mapped; ++w) {
            if (w == v) continue;
            const Codeword& b = c.codewords[c.codeword_index(w)];
            long long d = 0;
            for (int l = 0; l < c.q; ++l) d += a[l] != b[l];
            const int label_dist = std::popcount(static_cast<unsigned>(v ^ w));
            acc += pairwise_error_term(d, gamma_eta) * label_dist;
        }
    }
    out.ber = acc / (static_cast<double>(mapped) * bits);
    out.best_case = union_bound_generic(c, gamma) / bits;
    return out;
}

double required_gamma_db(const std::function<double(double)>& ber_of_gamma, double target_ber) {
    if (!(target_ber > 0.0 && target_ber < 0.5))
        throw Error(errc::bad_params, "target BER must lie in (0, 0.5)");
    double lo = 1e-8;
    double hi = 1e16;
    if (!(ber_of_gamma(lo) > target_ber) || !(ber_of_gamma(hi) < target_ber))
        throw Error(errc::not_bracketed, "BER curve does not cross the target in [1e-8, 1e16]");
    while (hi / lo > 1.0 + 1e-6) {
        const double mid = std::sqrt(lo * hi);
        (ber_of_gamma(mid) > target_ber ? lo : hi) = mid;
    }
    return 10.0 * std::log10(std::sqrt(lo * hi));
}

double SchemeSpec::eta() const noexcept {
    return std::log2(static_cast<double>(m)) / q;
}

double scheme_ser_bound(const SchemeSpec& spec, double gamma) {
    const double gamma_eta = gamma * spec.eta();
    switch (spec.scheme) {
    case Scheme::ppm:
        return (spec.q - 1) * pairwise_error_term(2, gamma_eta);
    case Scheme::mppm:
        return union_bound_mppm(spec.q, spec.k, spec.m, gamma);
    case Scheme::eppm:
        return union_bound_eppm(spec.q, spec.k, spec.lambda, spec.m, gamma);
    case Scheme::aeppm: {
        BibdParams{spec.q, spec.k, spec.lambda}.require_admissible();
        const long long d_rows = 2LL * (spec.k - spec.lambda);
        return (spec.q - 1) * pairwise_error_term(d_rows, gamma_eta) +
               (spec.q - 1) * pairwise_error_term(spec.q - d_rows, gamma_eta) +
               pairwise_error_term(spec.q, gamma_eta);
    }
    case Scheme::ook:
        return pairwise_error_term(1, gamma_eta);
    }
    throw Error(errc::bad_params, "unknown scheme");
}

double scheme_ber_bound(const SchemeSpec& spec, double gamma) {
    const double ser = scheme_ser_bound(spec, gamma);
    if (spec.scheme == Scheme::mppm)
        return ser / std::log2(static_cast<double>(spec.m));
    return ber_from_ser_equidistant(ser, spec.m);
}

BoundCurve bound_curve(const SchemeSpec& spec, const std::vector<double>& gamma_db_list) {
    BoundCurve curve;
    curve.spec = spec;
    curve.points.reserve(gamma_db_list.size());
    for (const double db : gamma_db_list) {
        const double gamma = std::pow(10.0, db / 10.0);
        curve.points.push_back({db, scheme_ser_bound(spec, gamma), scheme_ber_bound(spec, gamma)});
    }
    return curve;
}

std::vector<double> make_gamma_grid(double start_db, double stop_db, double step_db) {
    if (!(step_db > 0.0)) throw Error(errc::bad_params, "gamma step must be > 0");
    if (stop_db < start_db) throw Error(errc::bad_params, "gamma stop below start");
    const auto count =
        static_cast<long long>(std::floor((stop_db - start_db) / step_db + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (long long i = 0; i < count; ++i) grid.push_back(start_db + i * step_db);
    return grid;
}

std::vector<FrontierPoint> spectral_efficiency_frontier(const std::vector<SchemeSpec>& specs,
                                                        double target_ber) {
    std::vector<FrontierPoint> points;
    points.reserve(specs.size());
    for (const auto& spec : specs) {
        const double db = required_gamma_db(
            [&spec](double gamma) { return scheme_ber_bound(spec, gamma); }, target_ber);
        points.push_back({spec.scheme, spec.q, spec.eta(), db});
    }
    return points;
}

BibdParams family_params(int q) {
    if (q < 7 || q % 4 != 3)
        throw Error(errc::bad_params,
                    "difference-set family needs q = 3 mod 4, got " + std::to_string(q));
    return {q, (q - 1) / 2, (q - 3) / 4};
}

namespace {

int pow2_floor(long long n) {
    int m = 1;
    while (2LL * m <= n) m *= 2;
    return m;
}

} // namespace

std::vector<SchemeSpec> default_frontier_specs() {
    std::vector<SchemeSpec> specs;
    for (int q = 4; q <= 256; q *= 2)
        specs.push_back({Scheme::ppm, q, 1, 0, q});
    for (const int q : {8, 12, 16, 20}) {
        const int k = q / 2;
        specs.push_back({Scheme::mppm, q, k, 0, pow2_floor(binomial(q, k))});
    }
    for (const int q : {7, 11, 19, 35, 67, 131, 263}) {
        const BibdParams p = family_params(q);
        specs.push_back({Scheme::eppm, q, p.k, p.lambda, pow2_floor(q)});
    }
    for (const int q : {7, 11, 19, 35, 67, 131, 263}) {
        const BibdParams p = family_params(q);
        specs.push_back({Scheme::aeppm, q, p.k, p.lambda, pow2_floor(2LL * q)});
    }
    specs.push_back({Scheme::ook, 1, 1, 0, 2});
    return specs;
}

} // namespace eppm
