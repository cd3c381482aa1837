#include "sykclt/setcomb.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include <boost/math/distributions/hypergeometric.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <fmt/format.h>

#include "sykclt/clifford.hpp"
#include "sykclt/errors.hpp"
#include "sykclt/hamiltonian.hpp"

namespace sykclt {

BigCount big_binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigCount out = 1;
    for (int i = 1; i <= k; ++i) {
        out *= (n - k + i);
        out /= i;
    }
    return out;
}

BigCount count_B3_exact(int n, int q) {
    if (q < 1 || q > n) throw ArgumentError("q must satisfy 1 <= q <= n");
    if (q % 2 != 0) return 0;
    return big_binomial(n, q) * big_binomial(q, q / 2) * big_binomial(n - q, q / 2);
}

BigCount count_B4_exact(int n, int q) {
    if (q < 1 || q > n) throw ArgumentError("q must satisfy 1 <= q <= n");
    BigCount total = 0;
    for (int k = 0; k <= std::min(q, n - q); ++k) {
        const BigCount central = big_binomial(2 * k, k);
        const BigCount rest = big_binomial(n - 2 * k, q - k);
        total += big_binomial(n, 2 * k) * central * central * rest * rest;
    }
    return total;
}

namespace {

std::uint64_t tuple_count(int n, int q, int m) {
    const std::uint64_t sets = binomial(n, q);
    std::uint64_t total = 1;
    for (int i = 0; i < m; ++i) {
        if (sets != 0 && total > std::numeric_limits<std::uint64_t>::max() / sets) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        total *= sets;
    }
    return total;
}

} // namespace

bool bruteforce_feasible(int n, int q, int m, std::uint64_t guard) {
    return m >= 0 && q >= 1 && q <= n && n <= kMaxSymbolicN && tuple_count(n, q, m) <= guard;
}

std::uint64_t count_Bm_bruteforce(int n, int q, int m, bool distinct, std::uint64_t guard) {
    if (m < 1) throw ArgumentError("m must be >= 1");
    if (q < 1 || q > n || n > kMaxSymbolicN) throw ArgumentError("need 1 <= q <= n <= 64");
    const std::uint64_t tuples = tuple_count(n, q, m);
    if (tuples > guard) {
        throw ResourceError(fmt::format("brute force over |I_n|^m = {} tuples exceeds guard {}", tuples, guard));
    }
    const auto sets = enumerate_index_set(n, q);
    std::vector<MajoranaWord> prefix;  // prefix[d] = Psi_{R_1} ... Psi_{R_{d+1}}
    prefix.reserve(static_cast<std::size_t>(m));
    std::vector<std::size_t> chosen(static_cast<std::size_t>(m));
    std::uint64_t count = 0;

    auto recurse = [&](auto&& self, int depth) -> void {
        for (std::size_t s = 0; s < sets.size(); ++s) {
            if (distinct && std::find(chosen.begin(), chosen.begin() + depth, s) != chosen.begin() + depth) continue;
            chosen[depth] = s;
            MajoranaWord w = depth == 0 ? MajoranaWord(sets[s]) : word_product(prefix.back(), MajoranaWord(sets[s]));
            if (depth + 1 == m) {
                if (w.support.empty()) ++count;
                continue;
            }
            prefix.push_back(w);
            self(self, depth + 1);
            prefix.pop_back();
        }
    };
    recurse(recurse, 0);
    return count;
}

double bm_bound_ratio(int n, int q, int m, std::uint64_t guard) {
    if (m <= 2) return 0.0;
    const double count = static_cast<double>(count_Bm_bruteforce(n, q, m, true, guard));
    const double sets = static_cast<double>(binomial(n, q));
    return count * std::sqrt(static_cast<double>(n)) / std::pow(sets, m - 1);
}

// -- overlaps ------------------------------------------------------------

std::vector<double> OverlapHistogram::pmf() const {
    std::vector<double> out(counts.size(), 0.0);
    if (trials == 0) return out;
    for (std::size_t j = 0; j < counts.size(); ++j) out[j] = static_cast<double>(counts[j]) / static_cast<double>(trials);
    return out;
}

namespace {

/// Floyd's subset sampler: q distinct elements of [0, n) uniformly, as a
/// dynamic bitset.
void uniform_subset(int n, int q, Rng& rng, std::vector<std::uint64_t>& bits) {
    std::fill(bits.begin(), bits.end(), 0);
    for (int j = n - q; j < n; ++j) {
        const int t = std::uniform_int_distribution<int>(0, j)(rng);
        auto& word = bits[static_cast<std::size_t>(t) / 64];
        const std::uint64_t mask = std::uint64_t{1} << (t % 64);
        if (word & mask) {
            bits[static_cast<std::size_t>(j) / 64] |= std::uint64_t{1} << (j % 64);
        } else {
            word |= mask;
        }
    }
}

} // namespace

OverlapHistogram intersection_histogram(int n, int q, std::uint64_t trials, Rng& rng) {
    if (n < 1 || q < 0 || 2 * q > n) throw ArgumentError("overlap sampling needs 0 <= q <= n/2");
    OverlapHistogram h;
    h.n = n;
    h.q = q;
    h.trials = trials;
    h.counts.assign(static_cast<std::size_t>(q) + 1, 0);
    const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
    std::vector<std::uint64_t> a(words), b(words);
    for (std::uint64_t t = 0; t < trials; ++t) {
        uniform_subset(n, q, rng, a);
        uniform_subset(n, q, rng, b);
        int overlap = 0;
        for (std::size_t w = 0; w < words; ++w) overlap += std::popcount(a[w] & b[w]);
        ++h.counts[static_cast<std::size_t>(overlap)];
    }
    return h;
}

std::vector<double> hypergeometric_overlap_pmf(int n, int q) {
    if (n < 1 || q < 0 || q > n) throw ArgumentError("need 0 <= q <= n");
    // population n, q marked elements, draw q
    const boost::math::hypergeometric_distribution<double> law(static_cast<unsigned>(q), static_cast<unsigned>(q),
                                                               static_cast<unsigned>(n));
    std::vector<double> out(static_cast<std::size_t>(q) + 1, 0.0);
    const int lo = std::max(0, 2 * q - n);
    for (int j = lo; j <= q; ++j) out[static_cast<std::size_t>(j)] = boost::math::pdf(law, static_cast<unsigned>(j));
    return out;
}

std::vector<double> poisson_pmf(double mean, int j_max) {
    if (!(mean > 0.0)) throw ArgumentError("Poisson mean must be positive");
    const boost::math::poisson_distribution<double> law(mean);
    std::vector<double> out(static_cast<std::size_t>(j_max) + 1);
    for (int j = 0; j <= j_max; ++j) out[static_cast<std::size_t>(j)] = boost::math::pdf(law, static_cast<double>(j));
    return out;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& r) {
    const std::size_t size = std::max(p.size(), r.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < size; ++j) {
        const double a = j < p.size() ? p[j] : 0.0;
        const double b = j < r.size() ? r[j] : 0.0;
        acc += std::abs(a - b);
    }
    return 0.5 * acc;
}

double tv_distance_to_poisson(const std::vector<double>& pmf, double mean) {
    const int j_max = static_cast<int>(pmf.size()) - 1;
    const auto pois = poisson_pmf(mean, j_max);
    const boost::math::poisson_distribution<double> law(mean);
    const double tail = boost::math::cdf(boost::math::complement(law, static_cast<double>(j_max)));
    double acc = tail;
    for (std::size_t j = 0; j < pmf.size(); ++j) acc += std::abs(pmf[j] - pois[j]);
    return 0.5 * acc;
}

} // namespace sykclt
