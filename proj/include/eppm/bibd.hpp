#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eppm/errors.hpp"

namespace eppm {

/// Parameters (Q, K, lambda) of a symmetric balanced incomplete block design.
/// Admissible parameters satisfy lambda * (q - 1) == k * (k - 1).
struct BibdParams {
    int q = 0;      // point count = block count = code length
    int k = 0;      // block size = codeword weight
    int lambda = 0; // intersection size of any two distinct blocks

    bool admissible() const noexcept;
    void require_admissible() const; // throws Error(bad_params)

    friend bool operator==(const BibdParams&, const BibdParams&) = default;
};

/// A cyclic (Q, K, lambda) difference set: k distinct residues mod q whose
/// nonzero pairwise differences hit every residue class exactly lambda times.
/// Canonical form is sorted ascending.
struct DifferenceSet {
    BibdParams params;
    std::vector<int> residues;

    friend bool operator==(const DifferenceSet&, const DifferenceSet&) = default;
};

/// Q x Q binary incidence matrix of the cyclic design generated by a
/// difference set. Row j is the base block translated by j.
struct IncidenceMatrix {
    BibdParams params;
    std::vector<std::vector<std::uint8_t>> rows;
};

struct VerificationReport {
    bool pass = false;
    // difference_counts[d] = number of ordered pairs (a, b), a != b, with
    // a - b == d (mod q). Index 0 is unused and stays 0.
    std::vector<long long> difference_counts;
    std::vector<std::string> failures;
};

bool is_prime(long long n) noexcept;

/// Quadratic-residue difference set for prime q = 3 (mod 4):
/// the nonzero squares mod q, with parameters (q, (q-1)/2, (q-3)/4).
DifferenceSet qr_difference_set(int q);

/// Twin-prime difference set over Z_{p(p+2)} for twin primes p, p+2.
/// Contains the CRT images of pairs (x, y) with x, y both quadratic
/// residues or both non-residues, plus all pairs with y = 0.
DifferenceSet twin_prime_difference_set(int p);

/// Deterministic backtracking search over k-subsets of [0, q) with the first
/// element fixed to 0. Returns the lexicographically first verified set, or
/// nullopt when the budget is exhausted or no set exists.
std::optional<DifferenceSet> brute_force_search(const BibdParams& params,
                                                long long budget = 100'000'000);

/// Construct a difference set for q via whichever family applies: quadratic
/// residues when q is a prime = 3 (mod 4), twin primes when q = p(p+2).
/// Throws Error(bad_params) when neither family covers q.
DifferenceSet auto_difference_set(int q);

VerificationReport verify_difference_set(const DifferenceSet& ds);

IncidenceMatrix expand_incidence(const DifferenceSet& ds);

/// Parse the first design from a stream in the line format
///   Q K LAMBDA : r1 r2 ... rK
/// Lines starting with '#' are ignored. The parsed set must verify.
DifferenceSet load_difference_set(std::istream& in);

/// Write one design in the same line format (canonical, byte-stable).
void save_difference_set(const DifferenceSet& ds, std::ostream& out);
std::string format_difference_set(const DifferenceSet& ds);

/// Thrown by load_difference_set when parsing succeeds but verification fails.
class VerificationError : public Error {
public:
    VerificationError(VerificationReport report, const std::string& what)
        : Error(errc::verification_failed, what), report_(std::move(report)) {}
    const VerificationReport& report() const noexcept { return report_; }

private:
    VerificationReport report_;
};

} // namespace eppm
