#include "sykclt/moments.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <fmt/format.h>

#include "sykclt/errors.hpp"

namespace sykclt {

ScalingLimit ScalingLimit::finite(double a) {
    if (std::isnan(a) || a < 0.0) throw ArgumentError(fmt::format("a must lie in [0, inf], got {}", a));
    if (std::isinf(a)) return infinity();
    return ScalingLimit(a, false);
}

ScalingLimit ScalingLimit::parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
    std::size_t used = 0;
    double a = 0.0;
    try {
        a = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ArgumentError("cannot parse a = '" + text + "'");
    }
    if (used != text.size()) throw ArgumentError("cannot parse a = '" + text + "'");
    return finite(a);
}

ScalingLimit ScalingLimit::from_model(int n, int q) {
    if (n <= 0) throw ArgumentError("n must be positive");
    return finite(static_cast<double>(q) * q / n);
}

std::string ScalingLimit::to_string() const { return infinite_ ? "inf" : fmt::format("{}", a_); }

namespace {

void require_partition_order(int k) {
    if (k < 0) throw ArgumentError("partition order must be non-negative");
    if (k > kMaxPartitionOrder) {
        throw ArgumentError(fmt::format("partition order {} exceeds the guard {}", k, kMaxPartitionOrder));
    }
}

} // namespace

std::vector<PairPartition> pair_partitions(int k) {
    require_partition_order(k);
    std::vector<PairPartition> out;
    if (k % 2 != 0) return out;
    std::vector<bool> used(static_cast<std::size_t>(k) + 1, false);
    std::vector<PairPartition::Block> blocks;

    auto recurse = [&](auto&& self) -> void {
        int first = 1;
        while (first <= k && used[first]) ++first;
        if (first > k) {
            out.emplace_back(blocks);
            return;
        }
        used[first] = true;
        for (int partner = first + 1; partner <= k; ++partner) {
            if (used[partner]) continue;
            used[partner] = true;
            blocks.emplace_back(first, partner);
            self(self);
            blocks.pop_back();
            used[partner] = false;
        }
        used[first] = false;
    };
    recurse(recurse);
    return out;
}

int crossing_number(const PairPartition& p) { return static_cast<int>(p.crossings().size()); }

std::vector<std::uint64_t> crossing_histogram(int k) {
    require_partition_order(k);
    if (k % 2 != 0) return {};
    static std::mutex mutex;
    static std::map<int, std::vector<std::uint64_t>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(k); it != cache.end()) return it->second;
    }

    // Scan positions left to right, each either opening an arc or closing
    // one of the open arcs. Closing the arc opened at o crosses every arc
    // opened after o that is still open.
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(k / 2) * (k / 2 - 1) / 2 + 1, 0);
    std::vector<int> open;  // open arcs in order of opening
    auto recurse = [&](auto&& self, int pos, int crossings) -> void {
        if (pos == k) {
            ++hist[static_cast<std::size_t>(crossings)];
            return;
        }
        const int remaining = k - pos;
        if (static_cast<int>(open.size()) < remaining) {
            open.push_back(pos);
            self(self, pos + 1, crossings);
            open.pop_back();
        }
        for (std::size_t i = 0; i < open.size(); ++i) {
            const int opened = open[i];
            const int later = static_cast<int>(open.size() - i - 1);
            open.erase(open.begin() + static_cast<std::ptrdiff_t>(i));
            self(self, pos + 1, crossings + later);
            open.insert(open.begin() + static_cast<std::ptrdiff_t>(i), opened);
        }
    };
    recurse(recurse, 0, 0);

    std::lock_guard lock(mutex);
    cache.emplace(k, hist);
    return hist;
}

double double_factorial_odd(int k) {
    if (k % 2 != 0) return 0.0;
    double out = 1.0;
    for (int i = k - 1; i > 1; i -= 2) out *= i;
    return out;
}

double catalan(int m) {
    // C_m = binom(2m, m) / (m + 1), built up incrementally to stay exact
    double c = 1.0;
    for (int i = 0; i < m; ++i) c = c * 2.0 * (2.0 * i + 1.0) / (i + 2.0);
    return c;
}

double m_k_a(int k, ScalingLimit a) {
    if (k < 0) throw ArgumentError("moment order must be non-negative");
    if (k % 2 != 0) return 0.0;
    if (a.is_infinite()) return catalan(k / 2);
    if (a.value() == 0.0) return double_factorial_odd(k);
    const auto hist = crossing_histogram(k);
    double out = 0.0;
    for (std::size_t c = 0; c < hist.size(); ++c) {
        if (hist[c] != 0) out += static_cast<double>(hist[c]) * std::exp(-2.0 * a.value() * static_cast<double>(c));
    }
    return out;
}

double limit_mean_functional(const Polynomial& f, ScalingLimit a) {
    double out = 0.0;
    for (std::size_t k = 1; k < f.coefficients.size(); ++k) {
        if (f.coefficients[k] == 0.0) continue;
        out += f.coefficients[k] * (0.5 * static_cast<double>(k)) * m_k_a(static_cast<int>(k), a);
    }
    return out;
}

double limit_variance(const Polynomial& f, ScalingLimit a, double gamma) {
    if (gamma < 1.0) throw ArgumentError("the fourth moment gamma must be >= 1");
    const double mean = limit_mean_functional(f, a);
    return mean * mean * (gamma - 1.0);
}

double covariance_limit(int k, int k_prime, ScalingLimit a, double gamma) {
    if (k < 1 || k_prime < 1) throw ArgumentError("covariance orders must be >= 1");
    if ((k + k_prime) % 2 != 0) return 0.0;
    return (m_k_a(k, a) * 0.5 * k) * (m_k_a(k_prime, a) * 0.5 * k_prime) * (gamma - 1.0);
}

} // namespace sykclt
