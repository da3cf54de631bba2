#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "eppm/bibd.hpp"
#include "eppm/errors.hpp"

namespace eppm {

enum class Scheme { ppm, mppm, eppm, aeppm, ook };

std::string_view scheme_name(Scheme s) noexcept;
Scheme scheme_from_name(std::string_view name); // throws Error(bad_params)

using Codeword = std::vector<std::uint8_t>;

/// An ordered set of binary codewords plus the bit mapping used to label them.
///
/// Only the first 2^bits_per_symbol codewords carry data (the "mapped" set).
/// Bit strings map to codewords in natural binary order, except for AEPPM
/// where the mapped set splits evenly between base rows and complements so
/// the sign-extended receiver sees both halves.
struct Constellation {
    Scheme scheme = Scheme::ppm;
    int q = 0;          // slots per symbol
    int k = 0;          // weight of the base codewords
    int lambda = 0;     // pairwise cross-correlation (EPPM/AEPPM), else 0
    int m = 0;          // total codeword count
    int bits_per_symbol = 0;
    std::vector<Codeword> codewords;

    int mapped_count() const noexcept { return 1 << bits_per_symbol; }

    /// Codeword index carrying the given symbol value in [0, 2^bits).
    int codeword_index(int symbol_value) const;
    /// Inverse of codeword_index; -1 when the codeword is unmapped.
    int symbol_value(int cw_index) const noexcept;
    bool is_mapped(int cw_index) const noexcept { return symbol_value(cw_index) >= 0; }

    /// Modulation efficiency: bits per slot of the mapped alphabet.
    double eta() const noexcept { return static_cast<double>(bits_per_symbol) / q; }
};

Constellation build_ppm(int q);
Constellation build_mppm(int q, int k); // throws Error(too_large) past the size cap
Constellation build_eppm(const IncidenceMatrix& cm);
Constellation build_aeppm(const IncidenceMatrix& cm);
Constellation build_ook();

/// Shrink the mapped alphabet to m_mapped symbols (a power of two <= m).
void restrict_mapping(Constellation& c, int m_mapped);

/// Bit-string interface to the mapping, MSB first.
int map_bits(const Constellation& c, std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> unmap_symbol(const Constellation& c, int cw_index);

/// Exact integer distance structure of a codebook.
struct DistanceProfile {
    long long pair_sum = 0;                  // D: sum of all ordered pairwise distances
    double mean_distance = 0.0;              // D / (m (m - 1))
    std::map<int, long long> spectrum;       // distance -> ordered pair count
    long long a_total = 0;                   // A: total weight of all codewords
    std::vector<long long> column_weights;   // W_1 .. W_q
};

DistanceProfile distance_profile(const Constellation& c);

struct Rational {
    long long num = 0;
    long long den = 1;
    Rational() = default;
    Rational(long long n, long long d);
    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

Rational operator-(const Rational& a, const Rational& b);

/// For odd q: the unconstrained optimum of the mean pairwise distance,
/// q^2 / (2(q-1)), the best integer value (q+1)/2, and their exact gap.
struct EquidistanceGap {
    Rational d_max;
    long long d_integer_max = 0;
    Rational gap;
};

EquidistanceGap equidistance_gap(int q);

long long binomial(int n, int r); // throws Error(too_large) on overflow past 2^62

/// Matrix export: header `SCHEME Q K LAMBDA M`, then m rows of 0/1 characters.
void save_constellation(const Constellation& c, std::ostream& out);

} // namespace eppm
