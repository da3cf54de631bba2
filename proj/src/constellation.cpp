#include "eppm/constellation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <string>

namespace eppm {

namespace {

int floor_log2(long long n) {
    int b = -1;
    while (n > 0) {
        n >>= 1;
        ++b;
    }
    return b;
}

} // namespace

std::string_view scheme_name(Scheme s) noexcept {
    switch (s) {
    case Scheme::ppm: return "ppm";
    case Scheme::mppm: return "mppm";
    case Scheme::eppm: return "eppm";
    case Scheme::aeppm: return "aeppm";
    case Scheme::ook: return "ook";
    }
    return "?";
}

Scheme scheme_from_name(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "ppm") return Scheme::ppm;
    if (lower == "mppm") return Scheme::mppm;
    if (lower == "eppm") return Scheme::eppm;
    if (lower == "aeppm") return Scheme::aeppm;
    if (lower == "ook") return Scheme::ook;
    throw Error(errc::bad_params, "unknown scheme '" + std::string(name) + "'");
}

int Constellation::codeword_index(int symbol_value) const {
    if (symbol_value < 0 || symbol_value >= mapped_count())
        throw Error(errc::index_out_of_range,
                    "symbol value " + std::to_string(symbol_value) + " outside [0, " +
                        std::to_string(mapped_count()) + ")");
    if (scheme != Scheme::aeppm) return symbol_value;
    const int half = mapped_count() / 2;
    return symbol_value < half ? symbol_value : q + (symbol_value - half);
}

int Constellation::symbol_value(int cw_index) const noexcept {
    if (cw_index < 0 || cw_index >= m) return -1;
    if (scheme != Scheme::aeppm)
        return cw_index < mapped_count() ? cw_index : -1;
    const int half = mapped_count() / 2;
    if (cw_index < half) return cw_index;
    if (cw_index >= q && cw_index < q + half) return half + (cw_index - q);
    return -1;
}

Constellation build_ppm(int q) {
    if (q < 2) throw Error(errc::bad_params, "PPM needs q >= 2");
    Constellation c;
    c.scheme = Scheme::ppm;
    c.q = q;
    c.k = 1;
    c.lambda = 0;
    c.m = q;
    c.bits_per_symbol = floor_log2(q);
    c.codewords.assign(q, Codeword(q, 0));
    for (int i = 0; i < q; ++i) c.codewords[i][i] = 1;
    return c;
}

Constellation build_mppm(int q, int k) {
    if (q < 2 || k < 1 || k >= q)
        throw Error(errc::bad_params, "MPPM needs q >= 2 and 1 <= k < q");
    if (q > 62) throw Error(errc::too_large, "MPPM enumeration limited to q <= 62");
    const long long count = binomial(q, k);
    if (count > (1LL << 20))
        throw Error(errc::too_large, "MPPM codebook C(" + std::to_string(q) + "," +
                                         std::to_string(k) + ") exceeds 2^20 codewords");
    Constellation c;
    c.scheme = Scheme::mppm;
    c.q = q;
    c.k = k;
    c.lambda = 0;
    c.m = static_cast<int>(count);
    c.bits_per_symbol = floor_log2(count);
    c.codewords.reserve(c.m);
    // Walk the weight-k subsets in lexicographic order of the slot vector, i.e.
    // ascending order of the integer whose most significant bit is slot 0.
    std::uint64_t x = (1ULL << k) - 1;
    for (long long n = 0; n < count; ++n) {
        Codeword cw(q, 0);
        for (int slot = 0; slot < q; ++slot)
            cw[slot] = static_cast<std::uint8_t>((x >> (q - 1 - slot)) & 1U);
        c.codewords.push_back(std::move(cw));
        const std::uint64_t low = x & (~x + 1);
        const std::uint64_t carry = x + low;
        x = carry | (((x ^ carry) / low) >> 2);
    }
    return c;
}

namespace {

Constellation from_incidence(const IncidenceMatrix& cm, bool with_complements) {
    cm.params.require_admissible();
    Constellation c;
    c.scheme = with_complements ? Scheme::aeppm : Scheme::eppm;
    c.q = cm.params.q;
    c.k = cm.params.k;
    c.lambda = cm.params.lambda;
    c.m = with_complements ? 2 * c.q : c.q;
    c.bits_per_symbol = floor_log2(c.m);
    c.codewords = cm.rows;
    if (with_complements) {
        for (int i = 0; i < c.q; ++i) {
            Codeword bar = cm.rows[i];
            for (auto& v : bar) v = static_cast<std::uint8_t>(1 - v);
            c.codewords.push_back(std::move(bar));
        }
    }
    return c;
}

} // namespace

Constellation build_eppm(const IncidenceMatrix& cm) { return from_incidence(cm, false); }

Constellation build_aeppm(const IncidenceMatrix& cm) { return from_incidence(cm, true); }

Constellation build_ook() {
    Constellation c;
    c.scheme = Scheme::ook;
    c.q = 1;
    c.k = 1;
    c.lambda = 0;
    c.m = 2;
    c.bits_per_symbol = 1;
    c.codewords = {Codeword{0}, Codeword{1}};
    return c;
}

void restrict_mapping(Constellation& c, int m_mapped) {
    if (m_mapped < 2 || m_mapped > c.m || (m_mapped & (m_mapped - 1)) != 0)
        throw Error(errc::bad_params, "mapped alphabet size must be a power of two in [2, " +
                                          std::to_string(c.m) + "], got " +
                                          std::to_string(m_mapped));
    c.bits_per_symbol = floor_log2(m_mapped);
}

int map_bits(const Constellation& c, std::span<const std::uint8_t> bits) {
    if (static_cast<int>(bits.size()) != c.bits_per_symbol)
        throw Error(errc::bad_length, "expected " + std::to_string(c.bits_per_symbol) +
                                          " bits, got " + std::to_string(bits.size()));
    int value = 0;
    for (const auto b : bits) value = (value << 1) | (b ? 1 : 0);
    return c.codeword_index(value);
}

std::vector<std::uint8_t> unmap_symbol(const Constellation& c, int cw_index) {
    const int value = c.symbol_value(cw_index);
    if (value < 0)
        throw Error(errc::index_out_of_range,
                    "codeword " + std::to_string(cw_index) + " carries no bit pattern");
    std::vector<std::uint8_t> bits(c.bits_per_symbol);
    for (int i = 0; i < c.bits_per_symbol; ++i)
        bits[i] = static_cast<std::uint8_t>((value >> (c.bits_per_symbol - 1 - i)) & 1);
    return bits;
}

DistanceProfile distance_profile(const Constellation& c) {
    DistanceProfile p;
    p.column_weights.assign(c.q, 0);
    for (const auto& cw : c.codewords)
        for (int l = 0; l < c.q; ++l) p.column_weights[l] += cw[l];
    p.a_total = std::accumulate(p.column_weights.begin(), p.column_weights.end(), 0LL);
    for (int i = 0; i < c.m; ++i) {
        for (int j = i + 1; j < c.m; ++j) {
            int d = 0;
            for (int l = 0; l < c.q; ++l) d += c.codewords[i][l] != c.codewords[j][l];
            p.spectrum[d] += 2; // ordered pairs
            p.pair_sum += 2 * d;
        }
    }
    if (c.m > 1)
        p.mean_distance = static_cast<double>(p.pair_sum) /
                          (static_cast<double>(c.m) * (c.m - 1));
    return p;
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw Error(errc::bad_params, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
}

EquidistanceGap equidistance_gap(int q) {
    if (q < 3 || q % 2 == 0)
        throw Error(errc::bad_params, "equidistance gap defined for odd q >= 3");
    EquidistanceGap g;
    g.d_max = Rational(static_cast<long long>(q) * q, 2LL * (q - 1));
    g.d_integer_max = (q + 1) / 2;
    g.gap = g.d_max - Rational(g.d_integer_max, 1);
    return g;
}

long long binomial(int n, int r) {
    if (r < 0 || n < 0 || r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= r; ++i) {
        acc = acc * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
        if (acc > (static_cast<unsigned __int128>(1) << 62))
            throw Error(errc::too_large, "binomial overflow");
    }
    return static_cast<long long>(acc);
}

void save_constellation(const Constellation& c, std::ostream& out) {
    std::string name(scheme_name(c.scheme));
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    out << name << ' ' << c.q << ' ' << c.k << ' ' << c.lambda << ' ' << c.m << '\n';
    for (const auto& cw : c.codewords) {
        for (const auto v : cw) out << (v ? '1' : '0');
        out << '\n';
    }
}

} // namespace eppm
