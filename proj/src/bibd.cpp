#include "eppm/bibd.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace eppm {

bool BibdParams::admissible() const noexcept {
    if (q < 3 || k < 1 || k >= q || lambda < 0 || lambda >= k) return false;
    return static_cast<long long>(lambda) * (q - 1) ==
           static_cast<long long>(k) * (k - 1);
}

void BibdParams::require_admissible() const {
    if (!admissible()) {
        std::ostringstream msg;
        msg << "inadmissible design parameters (" << q << ", " << k << ", " << lambda
            << "): need q >= 3, 1 <= k < q, 0 <= lambda < k and lambda*(q-1) == k*(k-1)";
        throw Error(errc::bad_params, msg.str());
    }
}

bool is_prime(long long n) noexcept {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (long long d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

DifferenceSet qr_difference_set(int q) {
    if (!is_prime(q)) {
        throw Error(errc::not_prime, "q = " + std::to_string(q) + " is not prime");
    }
    if (q % 4 != 3) {
        throw Error(errc::wrong_residue_class,
                    "q = " + std::to_string(q) + " is not congruent to 3 mod 4");
    }
    std::vector<int> residues;
    residues.reserve((q - 1) / 2);
    std::vector<bool> seen(q, false);
    for (long long x = 1; x < q; ++x) {
        int r = static_cast<int>(x * x % q);
        if (!seen[r]) {
            seen[r] = true;
            residues.push_back(r);
        }
    }
    std::sort(residues.begin(), residues.end());
    DifferenceSet ds{{q, (q - 1) / 2, (q - 3) / 4}, std::move(residues)};
    return ds;
}

namespace {

// Legendre-style character: 0 for a = 0, +1 for quadratic residues, -1 otherwise.
int quadratic_character(int a, int p) {
    a %= p;
    if (a == 0) return 0;
    for (long long x = 1; x < p; ++x) {
        if (x * x % p == a) return 1;
    }
    return -1;
}

} // namespace

DifferenceSet twin_prime_difference_set(int p) {
    if (!is_prime(p) || !is_prime(p + 2)) {
        throw Error(errc::not_twin_primes,
                    "p = " + std::to_string(p) + ": p and p + 2 must both be prime");
    }
    const int p2 = p + 2;
    const int n = p * p2;
    std::vector<int> chi_p(p), chi_p2(p2);
    for (int a = 0; a < p; ++a) chi_p[a] = quadratic_character(a, p);
    for (int a = 0; a < p2; ++a) chi_p2[a] = quadratic_character(a, p2);

    std::vector<int> residues;
    residues.reserve((n - 1) / 2);
    for (int z = 0; z < n; ++z) {
        const int x = z % p;
        const int y = z % p2;
        if (y == 0 || (chi_p[x] != 0 && chi_p[x] == chi_p2[y])) {
            residues.push_back(z);
        }
    }
    return DifferenceSet{{n, (n - 1) / 2, (n - 3) / 4}, std::move(residues)};
}

namespace {

struct SearchState {
    const BibdParams& params;
    long long budget;
    long long tried = 0;
    std::vector<int> chosen;
    std::vector<int> diff_count;
    bool exhausted = false;

    explicit SearchState(const BibdParams& p, long long b)
        : params(p), budget(b), diff_count(p.q, 0) {}

    bool place(int value) {
        std::size_t applied = 0;
        bool ok = true;
        for (; applied < chosen.size(); ++applied) {
            const int prev = chosen[applied];
            const int d1 = (value - prev + params.q) % params.q;
            const int d2 = (prev - value + params.q) % params.q;
            ++diff_count[d1];
            ++diff_count[d2];
            if (diff_count[d1] > params.lambda || diff_count[d2] > params.lambda) {
                ++applied;
                ok = false;
                break;
            }
        }
        if (!ok) {
            for (std::size_t i = 0; i < applied; ++i) {
                const int prev = chosen[i];
                --diff_count[(value - prev + params.q) % params.q];
                --diff_count[(prev - value + params.q) % params.q];
            }
            return false;
        }
        chosen.push_back(value);
        return true;
    }

    void unplace() {
        const int value = chosen.back();
        chosen.pop_back();
        for (int prev : chosen) {
            --diff_count[(value - prev + params.q) % params.q];
            --diff_count[(prev - value + params.q) % params.q];
        }
    }

    bool extend() {
        if (static_cast<int>(chosen.size()) == params.k) return true;
        const int start = chosen.empty() ? 0 : chosen.back() + 1;
        // enough room left for the remaining elements
        const int remaining = params.k - static_cast<int>(chosen.size());
        for (int v = start; v <= params.q - remaining; ++v) {
            if (++tried > budget) {
                exhausted = true;
                return false;
            }
            if (!place(v)) continue;
            if (extend()) return true;
            if (exhausted) return false;
            unplace();
        }
        return false;
    }
};

} // namespace

std::optional<DifferenceSet> brute_force_search(const BibdParams& params, long long budget) {
    params.require_admissible();
    SearchState state(params, budget);
    // Translation symmetry: any set can be shifted so its smallest element is 0.
    if (!state.place(0)) return std::nullopt;
    if (!state.extend()) return std::nullopt;
    DifferenceSet ds{params, state.chosen};
    if (!verify_difference_set(ds).pass) return std::nullopt;
    return ds;
}

DifferenceSet auto_difference_set(int q) {
    if (is_prime(q) && q % 4 == 3) return qr_difference_set(q);
    // q = p(p+2) means q + 1 = (p+1)^2
    const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(q) + 1.0)));
    if (root * root == q + 1 && root >= 4 && is_prime(root - 1) && is_prime(root + 1)) {
        return twin_prime_difference_set(root - 1);
    }
    throw Error(errc::bad_params,
                "no construction covers q = " + std::to_string(q) +
                    " (need a prime q = 3 mod 4 or q = p(p+2) for twin primes p, p+2)");
}

VerificationReport verify_difference_set(const DifferenceSet& ds) {
    VerificationReport report;
    const auto& [q, k, lambda] = ds.params;
    report.difference_counts.assign(std::max(q, 1), 0);

    if (!ds.params.admissible()) {
        report.failures.push_back("parameters violate lambda*(q-1) == k*(k-1) or ranges");
        return report;
    }
    if (static_cast<int>(ds.residues.size()) != k) {
        report.failures.push_back("residue count != k");
        return report;
    }
    std::vector<bool> seen(q, false);
    for (int r : ds.residues) {
        if (r < 0 || r >= q) {
            report.failures.push_back("residue " + std::to_string(r) + " out of [0, q)");
            return report;
        }
        if (seen[r]) {
            report.failures.push_back("duplicate residue " + std::to_string(r));
            return report;
        }
        seen[r] = true;
    }
    for (int a : ds.residues) {
        for (int b : ds.residues) {
            if (a != b) ++report.difference_counts[(a - b + q) % q];
        }
    }
    for (int d = 1; d < q; ++d) {
        if (report.difference_counts[d] != lambda) {
            report.failures.push_back("difference " + std::to_string(d) + " occurs " +
                                      std::to_string(report.difference_counts[d]) +
                                      " times, expected " + std::to_string(lambda));
        }
    }
    report.pass = report.failures.empty();
    return report;
}

IncidenceMatrix expand_incidence(const DifferenceSet& ds) {
    const int q = ds.params.q;
    IncidenceMatrix cm;
    cm.params = ds.params;
    cm.rows.assign(q, std::vector<std::uint8_t>(q, 0));
    for (int j = 0; j < q; ++j) {
        for (int r : ds.residues) cm.rows[j][(r + j) % q] = 1;
    }
    return cm;
}

DifferenceSet load_difference_set(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;

        std::istringstream fields(line);
        BibdParams params;
        std::string colon;
        if (!(fields >> params.q >> params.k >> params.lambda >> colon) || colon != ":") {
            throw Error(errc::parse_error, "malformed design line: " + line);
        }
        if (params.q < 1 || params.k < 1 || params.k > params.q) {
            throw Error(errc::parse_error, "design line has impossible sizes: " + line);
        }
        std::vector<int> residues;
        int r = 0;
        while (fields >> r) residues.push_back(r);
        if (!fields.eof()) {
            throw Error(errc::parse_error, "trailing garbage on design line: " + line);
        }
        if (static_cast<int>(residues.size()) != params.k) {
            throw Error(errc::parse_error, "expected " + std::to_string(params.k) +
                                               " residues on design line: " + line);
        }
        DifferenceSet ds{params, std::move(residues)};
        auto report = verify_difference_set(ds);
        if (!report.pass) {
            std::string what = "design failed verification:";
            for (const auto& f : report.failures) what += " " + f + ";";
            throw VerificationError(std::move(report), what);
        }
        return ds;
    }
    throw Error(errc::parse_error, "no design line found in stream");
}

std::string format_difference_set(const DifferenceSet& ds) {
    std::ostringstream out;
    out << ds.params.q << ' ' << ds.params.k << ' ' << ds.params.lambda << " :";
    for (int r : ds.residues) out << ' ' << r;
    out << '\n';
    return out.str();
}

void save_difference_set(const DifferenceSet& ds, std::ostream& out) {
    out << format_difference_set(ds);
}

} // namespace eppm
