#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "eppm/analysis.hpp"
#include "eppm/bibd.hpp"
#include "eppm/constellation.hpp"
#include "eppm/errors.hpp"

using namespace eppm;

namespace {

Constellation eppm_c(int q) { return build_eppm(expand_incidence(auto_difference_set(q))); }
Constellation aeppm_c(int q) { return build_aeppm(expand_incidence(auto_difference_set(q))); }

constexpr SchemeSpec ppm8{Scheme::ppm, 8, 1, 0, 8};
constexpr SchemeSpec ppm64{Scheme::ppm, 64, 1, 0, 64};
constexpr SchemeSpec mppm12{Scheme::mppm, 12, 2, 0, 64};
constexpr SchemeSpec eppm11{Scheme::eppm, 11, 5, 2, 8};
constexpr SchemeSpec eppm67{Scheme::eppm, 67, 33, 16, 64};
constexpr SchemeSpec aeppm11{Scheme::aeppm, 11, 5, 2, 16};

double required_db(const SchemeSpec& spec, double target) {
    return required_gamma_db([&spec](double g) { return scheme_ber_bound(spec, g); }, target);
}

} // namespace

TEST_CASE("complementary error function is accurate across the tail") {
    // Reference values carry more digits than a double; the library must agree
    // to 1e-14 relative everywhere, including 29 orders of magnitude down.
    static const struct { double x, y; } table[] = {
        {0.05, 0.94362802220298338},   {0.1, 0.88753708398171511},
        {0.25, 0.72367360983176307},   {0.5, 0.47950012218695346},
        {0.75, 0.28884436634648487},   {1.0, 0.15729920705028513},
        {1.25, 0.07709987174354177},   {1.5, 0.033894853524689273},
        {1.75, 0.013328328780817556},  {2.0, 0.0046777349810472658},
        {2.5, 0.00040695201744495894}, {3.0, 2.2090496998585441e-05},
        {3.5, 7.4309837234141275e-07}, {4.0, 1.5417257900280019e-08},
        {4.5, 1.9661604415428875e-10}, {5.0, 1.5374597944280349e-12},
        {5.5, 7.3578479179743981e-15}, {6.0, 2.1519736712498913e-17},
        {7.0, 4.1838256077794144e-23}, {8.0, 1.1224297172982927e-29},
    };
    for (const auto& row : table)
        CHECK(std::abs(std::erfc(row.x) - row.y) <= 1e-14 * row.y);
}

TEST_CASE("pairwise error term closed-form values") {
    CHECK(pairwise_error_term(4, 0.5) == doctest::Approx(0.078649603525142565).epsilon(1e-13));
    CHECK(pairwise_error_term(4, 1.0) == doctest::Approx(0.022750131948179207).epsilon(1e-13));
    CHECK(pairwise_error_term(4, 2.0) == doctest::Approx(0.0023388674905236329).epsilon(1e-13));
    // Only the product d * gamma * eta matters.
    CHECK(pairwise_error_term(4, 2.0) == pairwise_error_term(2, 4.0));
    CHECK(pairwise_error_term(4, 2.0) == pairwise_error_term(8, 1.0));
    CHECK(pairwise_error_term(0, 3.0) == doctest::Approx(0.5));
}

TEST_CASE("PPM bound: closed form, generic agreement and the q = 2 limit") {
    const double gamma = 32.0 / 3.0; // gamma * eta = 4 for q = 8
    CHECK(union_bound_ppm(8, gamma) == doctest::Approx(0.01637207243366543).epsilon(1e-13));
    CHECK(union_bound_ppm(8, gamma) == doctest::Approx(3.5 * std::erfc(2.0)).epsilon(1e-14));
    CHECK(union_bound_ppm(8, gamma) == union_bound_generic(build_ppm(8), gamma));
    CHECK(union_bound_ppm(16, 2.5) == union_bound_generic(build_ppm(16), 2.5));

    // As SNR -> 0 the two-codeword bound saturates at 1/2.
    CHECK(union_bound_ppm(2, 1e-12) == doctest::Approx(0.5).epsilon(1e-5));
    CHECK_THROWS_AS(union_bound_ppm(1, 1.0), Error);
}

TEST_CASE("multipulse bound: coefficients, generic agreement, single-pulse reduction") {
    // q = 12, k = 2: overlap classes contribute C(2,1)C(10,1) = 20 at distance
    // 2 and C(2,2)C(10,2) = 45 at distance 4.
    const double g = 8.0;
    const double ge = g * 6.0 / 12.0;
    const double by_hand = 20.0 * pairwise_error_term(2, ge) + 45.0 * pairwise_error_term(4, ge);
    CHECK(union_bound_mppm(12, 2, 64, g) == doctest::Approx(by_hand).epsilon(1e-15));
    CHECK(union_bound_mppm(12, 2, 64, g) == doctest::Approx(0.048202555692963055).epsilon(1e-13));
    CHECK(union_bound_mppm(12, 2, 64, g) == union_bound_generic(build_mppm(12, 2), g));

    // One pulse per frame is plain PPM.
    for (const double gamma : {0.5, 3.0, 20.0})
        CHECK(union_bound_mppm(8, 1, 8, gamma) == union_bound_ppm(8, gamma));

    CHECK_THROWS_AS(union_bound_mppm(8, 0, 8, 1.0), Error);
    CHECK_THROWS_AS(union_bound_mppm(8, 8, 8, 1.0), Error);
}

TEST_CASE("multipulse leading term dominates at high SNR") {
    const double gamma = std::pow(10.0, 15.719986 / 10.0);
    const double full = union_bound_mppm(12, 2, 64, gamma);
    const double lead = union_bound_mppm_high_snr(12, 2, 64, gamma);
    CHECK(lead < full); // the dropped overlap classes are positive
    CHECK(lead / full == doctest::Approx(1.0).epsilon(1e-3));
    // At low SNR the dropped classes matter.
    CHECK(union_bound_mppm_high_snr(12, 2, 64, 1.0) / union_bound_mppm(12, 2, 64, 1.0) < 0.9);
}

TEST_CASE("equidistant bound: closed form and generic agreement") {
    CHECK(union_bound_eppm(11, 5, 2, 8, 10.0) ==
          doctest::Approx(0.00026139328916337182).epsilon(1e-13));
    CHECK(union_bound_eppm(11, 5, 2, 8, 10.0) == union_bound_generic(eppm_c(11), 10.0));
    for (const double gamma : {0.7, 4.0, 25.0})
        CHECK(union_bound_eppm(7, 3, 1, 4, gamma) ==
              doctest::Approx(union_bound_generic(eppm_c(7), gamma)).epsilon(1e-12));
    CHECK_THROWS_AS(union_bound_eppm(8, 3, 1, 8, 1.0), Error); // not a valid design
}

TEST_CASE("augmented bound sums the three distance classes of the doubled codebook") {
    CHECK(scheme_ser_bound(aeppm11, 10.0) ==
          doctest::Approx(0.00011538071683401807).epsilon(1e-13));
    for (const double gamma : {0.8, 5.0, 10.0})
        CHECK(scheme_ser_bound(aeppm11, gamma) ==
              doctest::Approx(union_bound_generic(aeppm_c(11), gamma)).epsilon(1e-12));
}

TEST_CASE("doubling the codebook beats halving the rate") {
    // At one and the same gamma * eta the augmented codebook has strictly more
    // error terms, so its symbol bound is strictly larger...
    for (const double x : {0.5, 2.0, 5.0}) {
        const double aug = scheme_ser_bound(aeppm11, x / aeppm11.eta());
        const double base = scheme_ser_bound(eppm11, x / eppm11.eta());
        CHECK(aug > base);
    }
    // ...but at the same gamma its extra bit per symbol more than compensates.
    CHECK(scheme_ser_bound(aeppm11, 10.0) < scheme_ser_bound(eppm11, 10.0));
    CHECK(scheme_ber_bound(aeppm11, 10.0) < scheme_ber_bound(eppm11, 10.0));
}

TEST_CASE("symbol-to-bit conversion for equidistant codebooks") {
    CHECK(ber_from_ser_equidistant(0.01, 2) == doctest::Approx(0.01));
    CHECK(ber_from_ser_equidistant(0.07, 8) == doctest::Approx(0.07 * 4.0 / 7.0));
    CHECK(ber_from_ser_equidistant(0.2, 1024) == doctest::Approx(0.2 * 1024.0 / 2046.0));
    CHECK_THROWS_AS(ber_from_ser_equidistant(0.01, 1), Error);
}

TEST_CASE("label-aware bit bound") {
    // Two mapped codewords: the bit bound is exactly the pairwise term.
    auto pair = build_ppm(4);
    restrict_mapping(pair, 2);
    const double gamma = 6.0;
    CHECK(ber_bound_mapped(pair, gamma).ber ==
          pairwise_error_term(2, gamma * pair.eta()));

    // Equidistant mapped codebook with a full binary label set: the label
    // weights average out and the uniform-wrong-symbol relation is exact.
    const auto c7 = eppm_c(7); // 4 mapped codewords, all pairs at distance 4
    const double ge = gamma * c7.eta();
    const double mapped_ser = 3.0 * pairwise_error_term(4, ge);
    const auto bb = ber_bound_mapped(c7, gamma);
    CHECK(bb.ber == doctest::Approx(ber_from_ser_equidistant(mapped_ser, 4)).epsilon(1e-14));
    // The optimistic floor charges one bit per symbol error over the full set.
    CHECK(bb.best_case == doctest::Approx(union_bound_generic(c7, gamma) / 2.0).epsilon(1e-14));
    // Label weights bracket the bit bound between ser/bits and ser.
    CHECK(bb.ber <= mapped_ser * (1 + 1e-12));
    CHECK(bb.ber >= mapped_ser / 2.0 * (1 - 1e-12));
}

TEST_CASE("SNR solver reproduces frozen thresholds at BER 1e-9") {
    CHECK(std::abs(required_db(ppm8, 1e-9) - 17.1239445565) < 1e-3);
    CHECK(std::abs(required_db(mppm12, 1e-9) - 15.8344174813) < 1e-3);
    CHECK(std::abs(required_db(eppm11, 1e-9) - 13.8132512465) < 1e-3);
    CHECK(std::abs(required_db(ppm64, 1e-9) - 23.5783982092) < 1e-3);
    CHECK(std::abs(required_db(eppm67, 1e-9) - 11.4820943677) < 1e-3);
}

TEST_CASE("SNR solver reproduces frozen thresholds at moderate targets") {
    CHECK(std::abs(required_db(eppm11, 1e-3) - 8.9271365) < 1e-3);
    CHECK(std::abs(required_db(eppm11, 1e-4) - 10.197488) < 1e-3);
    CHECK(std::abs(required_db(ppm8, 1e-3) - 12.08286) < 1e-3);
    CHECK(std::abs(required_db(ppm8, 1e-4) - 13.410547) < 1e-3);
}

TEST_CASE("SNR solver rejects curves that never cross the target") {
    CHECK_THROWS_AS(required_gamma_db([](double) { return 0.3; }, 1e-9), Error);
    try {
        required_gamma_db([](double) { return 0.3; }, 1e-9);
    } catch (const Error& e) {
        CHECK(e.code() == errc::not_bracketed);
    }
    CHECK_THROWS_AS(required_gamma_db([](double g) { return 1.0 / (1.0 + g); }, 0.7), Error);
}

TEST_CASE("threshold gaps between schemes at BER 1e-9") {
    const double p8 = required_db(ppm8, 1e-9);
    const double m12 = required_db(mppm12, 1e-9);
    const double e11 = required_db(eppm11, 1e-9);
    const double p64 = required_db(ppm64, 1e-9);
    const double e67 = required_db(eppm67, 1e-9);
    CHECK(std::abs((p8 - e11) - 3.31069331) < 1e-4);
    CHECK(std::abs((m12 - e11) - 2.021166235) < 1e-4);
    CHECK(std::abs((p64 - e67) - 12.09630384) < 1e-4);
    CHECK(std::abs((m12 - e67) - 4.352323114) < 1e-4);
}

TEST_CASE("bit bounds per scheme") {
    const double ser_e = scheme_ser_bound(eppm11, 9.0);
    CHECK(scheme_ber_bound(eppm11, 9.0) == doctest::Approx(ser_e * 8.0 / 14.0));
    const double ser_m = scheme_ser_bound(mppm12, 9.0);
    CHECK(scheme_ber_bound(mppm12, 9.0) == doctest::Approx(ser_m / 6.0));
    CHECK(scheme_ser_bound({Scheme::ook, 1, 1, 0, 2}, 4.0) ==
          pairwise_error_term(1, 4.0));
}

TEST_CASE("bound curves tabulate both bounds over the grid") {
    const auto grid = make_gamma_grid(0.0, 6.0, 2.0);
    const auto curve = bound_curve(eppm11, grid);
    REQUIRE(curve.points.size() == 4);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double gamma = std::pow(10.0, grid[i] / 10.0);
        CHECK(curve.points[i].gamma_db == grid[i]);
        CHECK(curve.points[i].ser_bound == scheme_ser_bound(eppm11, gamma));
        CHECK(curve.points[i].ber_bound == scheme_ber_bound(eppm11, gamma));
    }
}

TEST_CASE("dB grids are inclusive and validated") {
    const auto grid = make_gamma_grid(0.0, 24.0, 0.5);
    REQUIRE(grid.size() == 49);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == doctest::Approx(24.0));
    CHECK(make_gamma_grid(5.0, 5.0, 1.0) == std::vector<double>{5.0});
    CHECK(make_gamma_grid(0.0, 1.0, 0.3).size() == 4); // 0, 0.3, 0.6, 0.9
    CHECK_THROWS_AS(make_gamma_grid(0.0, 10.0, 0.0), Error);
    CHECK_THROWS_AS(make_gamma_grid(0.0, 10.0, -1.0), Error);
    CHECK_THROWS_AS(make_gamma_grid(10.0, 0.0, 1.0), Error);
}

TEST_CASE("equidistant codebooks minimize the bound at fixed pulse budget") {
    // For any m = q codebook of constant row weight k the average pairwise
    // distance is at most 2k(q-k)/(q-1); an equidistant codebook meets that
    // ceiling.  Since the pairwise term is convex and decreasing in the
    // distance, every random codebook's union bound must lie on or above the
    // equidistant value at that budget.
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 1000; ++trial) {
        const int q = 5 + static_cast<int>(rng() % 11);
        const int k = 1 + static_cast<int>(rng() % (q - 1));

        Constellation c;
        c.scheme = Scheme::ook;
        c.q = q;
        c.k = k;
        c.m = q;
        c.bits_per_symbol = 1; // unused: eta is passed explicitly below
        std::vector<int> cols(q);
        std::iota(cols.begin(), cols.end(), 0);
        for (int r = 0; r < q; ++r) {
            std::shuffle(cols.begin(), cols.end(), rng);
            Codeword row(q, 0);
            for (int i = 0; i < k; ++i) row[cols[i]] = 1;
            c.codewords.push_back(row);
        }

        const double eta = 1.0;
        const double gamma = 0.8;
        const double actual = union_bound_generic(distance_profile(c), q, eta, gamma);
        const double floor_value =
            (q - 1) * pairwise_error_term(2.0 * k * (q - k) / (q - 1), gamma * eta);
        CHECK(actual >= floor_value * (1.0 - 1e-12));
    }
}

TEST_CASE("efficiency frontier: shape, ordering and frozen anchors") {
    const auto specs = default_frontier_specs();
    REQUIRE(specs.size() == 26);
    const auto points = spectral_efficiency_frontier(specs, 1e-5);
    REQUIRE(points.size() == 26);

    std::vector<double> ppm_db, eppm_db, aeppm_db, mppm_db;
    double ook_db = 0.0;
    const FrontierPoint* e11 = nullptr;
    const FrontierPoint* a11 = nullptr;
    for (const auto& p : points) {
        switch (p.scheme) {
        case Scheme::ppm: ppm_db.push_back(p.required_gamma_db); break;
        case Scheme::mppm: mppm_db.push_back(p.required_gamma_db); break;
        case Scheme::eppm:
            eppm_db.push_back(p.required_gamma_db);
            if (p.q == 11) e11 = &p;
            break;
        case Scheme::aeppm:
            aeppm_db.push_back(p.required_gamma_db);
            if (p.q == 11) a11 = &p;
            break;
        case Scheme::ook: ook_db = p.required_gamma_db; break;
        }
    }
    REQUIRE(ppm_db.size() == 7);
    REQUIRE(mppm_db.size() == 4);
    REQUIRE(eppm_db.size() == 7);
    REQUIRE(aeppm_db.size() == 7);

    CHECK(std::is_sorted(ppm_db.begin(), ppm_db.end()));   // PPM pays for alphabet size
    CHECK(std::is_sorted(eppm_db.rbegin(), eppm_db.rend())); // larger designs need less SNR
    CHECK(std::is_sorted(aeppm_db.rbegin(), aeppm_db.rend()));
    for (std::size_t i = 0; i < 7; ++i) CHECK(aeppm_db[i] < eppm_db[i]);

    REQUIRE(e11 != nullptr);
    REQUIRE(a11 != nullptr);
    CHECK(a11->eta > e11->eta); // more bits per slot...
    CHECK(a11->required_gamma_db < e11->required_gamma_db); // ...for less SNR

    CHECK(std::abs(ppm_db.front() - 12.90288899) < 1e-3);  // q = 4
    CHECK(std::abs(ppm_db.back() - 26.43617284) < 1e-3);   // q = 256
    CHECK(std::abs(eppm_db.front() - 12.60849227) < 1e-3); // q = 7
    CHECK(std::abs(eppm_db.back() - 8.36615212) < 1e-3);   // q = 263
    CHECK(std::abs(aeppm_db.front() - 12.04627321) < 1e-3);
    CHECK(std::abs(mppm_db.front() - 11.26270258) < 1e-3); // q = 8, k = 4
    CHECK(std::abs(ook_db - 12.5981583) < 1e-3);
}

TEST_CASE("design-family parameter helper") {
    const auto p = family_params(11);
    CHECK(p.q == 11);
    CHECK(p.k == 5);
    CHECK(p.lambda == 2);
    CHECK(family_params(263).k == 131);
    CHECK_THROWS_AS(family_params(13), Error);
    CHECK_THROWS_AS(family_params(3), Error);
}
