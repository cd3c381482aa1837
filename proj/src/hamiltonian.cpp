#include "sykclt/hamiltonian.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "sykclt/enumeration.hpp"
#include "sykclt/errors.hpp"

namespace sykclt {

namespace {

constexpr std::uint64_t kMaxCouplings = 50'000'000;
constexpr double kDistributionTolerance = 1e-9;

void require_valid_nq(int n, int q) {
    if (n < 1 || n > kMaxSymbolicN) throw ArgumentError("n must lie in [1, 64], got " + std::to_string(n));
    if (q < 1 || q > n) {
        throw ArgumentError("q must satisfy 1 <= q <= n, got q = " + std::to_string(q) + ", n = " + std::to_string(n));
    }
}

double double_factorial(int m) {
    double out = 1.0;
    for (int i = m; i > 1; i -= 2) out *= i;
    return out;
}

} // namespace

// -- distributions -------------------------------------------------------

CouplingDistribution CouplingDistribution::gaussian() { return CouplingDistribution(Kind::Gaussian); }
CouplingDistribution CouplingDistribution::rademacher() { return CouplingDistribution(Kind::Rademacher); }
CouplingDistribution CouplingDistribution::uniform_scaled() { return CouplingDistribution(Kind::UniformScaled); }

CouplingDistribution CouplingDistribution::custom(std::vector<double> atoms, std::vector<double> weights) {
    if (atoms.empty() || atoms.size() != weights.size()) {
        throw ArgumentError("custom distribution needs matching, non-empty atom and weight lists");
    }
    double total = 0.0, mean = 0.0, second = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!(weights[i] >= 0.0) || !std::isfinite(atoms[i])) throw ArgumentError("custom distribution weights must be non-negative");
        total += weights[i];
        mean += weights[i] * atoms[i];
        second += weights[i] * atoms[i] * atoms[i];
    }
    if (std::abs(total - 1.0) > kDistributionTolerance) throw ArgumentError("custom distribution weights must sum to 1");
    if (std::abs(mean) > kDistributionTolerance) throw ArgumentError("custom distribution must have mean 0");
    if (std::abs(second - 1.0) > kDistributionTolerance) throw ArgumentError("custom distribution must have variance 1");
    CouplingDistribution d(Kind::Custom);
    d.atoms_ = std::move(atoms);
    d.weights_ = std::move(weights);
    return d;
}

CouplingDistribution CouplingDistribution::from_name(const std::string& name) {
    if (name == "gaussian") return gaussian();
    if (name == "rademacher") return rademacher();
    if (name == "uniform_scaled") return uniform_scaled();
    throw ArgumentError("unknown coupling distribution '" + name + "'");
}

std::string CouplingDistribution::name() const {
    switch (kind_) {
    case Kind::Gaussian: return "gaussian";
    case Kind::Rademacher: return "rademacher";
    case Kind::UniformScaled: return "uniform_scaled";
    case Kind::Custom: return "custom";
    }
    return "unknown";
}

double CouplingDistribution::moment(int j) const {
    if (j < 0) throw ArgumentError("moment order must be non-negative");
    if (j == 0) return 1.0;
    switch (kind_) {
    case Kind::Gaussian: return j % 2 ? 0.0 : double_factorial(j - 1);
    case Kind::Rademacher: return j % 2 ? 0.0 : 1.0;
    case Kind::UniformScaled: return j % 2 ? 0.0 : std::pow(3.0, j / 2) / (j + 1);
    case Kind::Custom: {
        double m = 0.0;
        for (std::size_t i = 0; i < atoms_.size(); ++i) m += weights_[i] * std::pow(atoms_[i], j);
        return m;
    }
    }
    return 0.0;
}

bool CouplingDistribution::symmetric() const { return kind_ != Kind::Custom; }

double CouplingDistribution::draw(Rng& rng) const {
    switch (kind_) {
    case Kind::Gaussian: return std::normal_distribution<double>(0.0, 1.0)(rng);
    case Kind::Rademacher: return std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
    case Kind::UniformScaled: {
        const double r = std::sqrt(3.0);
        return std::uniform_real_distribution<double>(-r, r)(rng);
    }
    case Kind::Custom:
        return atoms_[std::discrete_distribution<std::size_t>(weights_.begin(), weights_.end())(rng)];
    }
    return 0.0;
}

// -- index sets and samples ----------------------------------------------

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 out = 1;
    for (int i = 1; i <= k; ++i) {
        out = out * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (out > std::numeric_limits<std::uint64_t>::max()) {
            throw ResourceError(fmt::format("binomial({}, {}) does not fit in 64 bits", n, k));
        }
    }
    return static_cast<std::uint64_t>(out);
}

std::vector<IndexSet> enumerate_index_set(int n, int q) {
    require_valid_nq(n, q);
    const std::uint64_t count = binomial(n, q);
    if (count > kMaxCouplings) throw ResourceError(fmt::format("|I_n| = {} exceeds the enumeration cap", count));
    std::vector<IndexSet> out;
    out.reserve(count);
    std::vector<int> idx(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) idx[i] = i + 1;
    while (true) {
        out.push_back(IndexSet::from_elements(idx, n));
        int i = q - 1;
        while (i >= 0 && idx[i] == n - q + i + 1) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < q; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

CouplingSample sample_couplings(const CouplingDistribution& dist, int n, int q, Rng& rng) {
    require_valid_nq(n, q);
    const std::uint64_t count = binomial(n, q);
    if (count > kMaxCouplings) throw ResourceError(fmt::format("|I_n| = {} exceeds the sampling cap", count));
    CouplingSample s;
    s.n = n;
    s.q = q;
    s.values.resize(count);
    for (auto& v : s.values) v = dist.draw(rng);
    return s;
}

double mean_square_coupling(const CouplingSample& sample) {
    double acc = 0.0;
    for (double v : sample.values) acc += v * v;
    return acc / static_cast<double>(sample.values.size());
}

void write_coupling_csv(const CouplingSample& sample, std::ostream& out) {
    const auto sets = enumerate_index_set(sample.n, sample.q);
    if (sets.size() != sample.values.size()) throw DimensionError("coupling sample length does not match (n choose q)");
    out << "index,set,J\n";
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::string joined;
        for (int j : sets[i].elements()) {
            if (!joined.empty()) joined += ';';
            joined += std::to_string(j);
        }
        fmt::print(out, "{},{},{:.17g}\n", i, joined, sample.values[i]);
    }
}

CouplingSample read_coupling_csv(std::istream& in, int n, int q) {
    const auto sets = enumerate_index_set(n, q);
    CouplingSample s;
    s.n = n;
    s.q = q;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (line != "index,set,J") throw SchemaError("coupling CSV header must be 'index,set,J'");
            continue;
        }
        std::istringstream row(line);
        std::string index, set, value;
        if (!std::getline(row, index, ',') || !std::getline(row, set, ',') || !std::getline(row, value)) {
            throw SchemaError("malformed coupling CSV row: " + line);
        }
        const std::size_t i = std::stoull(index);
        if (i != s.values.size() || i >= sets.size()) throw SchemaError("coupling CSV rows out of canonical order");
        std::vector<int> elems;
        std::istringstream es(set);
        for (std::string e; std::getline(es, e, ';');) elems.push_back(std::stoi(e));
        if (IndexSet::from_elements(elems, n) != sets[i]) throw SchemaError("coupling CSV set does not match canonical I_n");
        s.values.push_back(std::stod(value));
    }
    if (s.values.size() != sets.size()) throw SchemaError("coupling CSV has the wrong number of rows");
    return s;
}

// -- assembly ------------------------------------------------------------

HamiltonianBuilder::HamiltonianBuilder(int n, int q, int dense_cap) : n_(n), q_(q) {
    require_valid_nq(n, q);
    if (n % 2 != 0) throw ArgumentError("the Hamiltonian needs even n");
    if (n > dense_cap) throw ResourceError(fmt::format("n = {} exceeds the dense cap {}", n, dense_cap));
    sets_ = enumerate_index_set(n, q);
    forms_.reserve(sets_.size());
    for (const auto& r : sets_) forms_.push_back(jordan_wigner(r));
    prefactor_ = Phase::i_power(q / 2).value() / std::sqrt(static_cast<double>(sets_.size()));
}

HamiltonianMatrix HamiltonianBuilder::assemble(const CouplingSample& sample) const {
    if (sample.n != n_ || sample.q != q_ || sample.values.size() != sets_.size()) {
        throw DimensionError("coupling sample does not match the builder's (n, q)");
    }
    const Eigen::Index dim = Eigen::Index{1} << (n_ / 2);
    HamiltonianMatrix h;
    h.n = n_;
    h.q = q_;
    h.seed = sample.seed;
    h.sample_id = sample.sample_id;
    h.entries = DenseOperator::Zero(dim, dim);
    std::complex<double>* data = h.entries.data();
    const auto udim = static_cast<std::uint64_t>(dim);

    for (std::size_t t = 0; t < forms_.size(); ++t) {
        const PauliForm& p = forms_[t];
        const std::complex<double> c = prefactor_ * sample.values[t] * p.phase.value();
        for (std::uint64_t b = 0; b < udim; ++b) {
            const std::uint64_t row = b ^ p.x;
            // column-major: entry (row, b)
            if (std::popcount(p.z & b) & 1) {
                data[b * udim + row] -= c;
            } else {
                data[b * udim + row] += c;
            }
        }
    }

    const double defect = hermiticity_defect(h.entries);
    if (defect > 1e-12) throw ValidationError(fmt::format("assembled Hamiltonian not Hermitian (defect {:.3e})", defect));
    const double trace = std::abs(h.entries.trace());
    if (trace > 1e-10 * static_cast<double>(dim)) {
        throw ValidationError(fmt::format("assembled Hamiltonian not traceless (|Tr H| = {:.3e})", trace));
    }
    return h;
}

HamiltonianMatrix assemble_dense(const CouplingSample& sample, int dense_cap) {
    return HamiltonianBuilder(sample.n, sample.q, dense_cap).assemble(sample);
}

double hermiticity_defect(const DenseOperator& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

// -- exact moments -------------------------------------------------------

namespace {

double partition_weight(const PositionPartition& p, const CouplingDistribution& dist) {
    double w = 1.0;
    for (int s : p.block_sizes()) w *= dist.moment(s);
    return w;
}

} // namespace

std::uint64_t moment_enumeration_terms(int n, int q, int k) {
    const std::uint64_t sets = binomial(n, q);
    std::uint64_t total = 0;
    for (const auto& p : partitions_without_singletons(k)) {
        const std::uint64_t t = falling_factorial(sets, p.blocks);
        total = (total > std::numeric_limits<std::uint64_t>::max() - t) ? std::numeric_limits<std::uint64_t>::max()
                                                                         : total + t;
    }
    return total;
}

double exact_moment_expectation(int n, int q, int k, const CouplingDistribution& dist, std::uint64_t guard) {
    require_valid_nq(n, q);
    if (n % 2 != 0) throw ArgumentError("the Hamiltonian needs even n");
    if (k < 0) throw ArgumentError("moment order must be non-negative");
    if (k == 0) return 1.0;
    if (dist.symmetric() && k % 2 == 1) return 0.0;

    const std::uint64_t terms = moment_enumeration_terms(n, q, k);
    if (terms > guard) {
        throw ResourceError(fmt::format("exact moment enumeration needs {} terms, guard is {}", terms, guard));
    }

    const auto sets = enumerate_index_set(n, q);
    std::complex<double> total = 0.0;
    std::vector<IndexSet> tuple;
    for (const auto& partition : partitions_without_singletons(k)) {
        const double weight = partition_weight(partition, dist);
        if (weight == 0.0) continue;
        GaussianIntegerSum traces;
        for_each_injective_assignment(partition, sets, tuple, [&](const std::vector<IndexSet>& t) {
            const MajoranaWord w = fold_product(t);
            if (w.support.empty()) traces.add(w.phase);
        });
        total += weight * std::complex<double>(static_cast<double>(traces.re), static_cast<double>(traces.im));
    }
    total *= Phase::i_power((q / 2) * k).value();
    total /= std::pow(static_cast<double>(sets.size()), 0.5 * k);
    if (std::abs(total.imag()) > 1e-9 * std::max(1.0, std::abs(total.real()))) {
        throw ValidationError("exact moment has a non-vanishing imaginary part");
    }
    return total.real();
}

} // namespace sykclt
