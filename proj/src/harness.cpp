#include "sykclt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "sykclt/enumeration.hpp"
#include "sykclt/errors.hpp"
#include "sykclt/moments.hpp"

namespace sykclt {

void validate(const ExperimentConfig& cfg) {
    if (cfg.samples < 2) throw ArgumentError("an ensemble needs at least 2 samples");
    if (cfg.n < 2 || cfg.n % 2 != 0) throw ArgumentError(fmt::format("n = {} must be even and >= 2", cfg.n));
    if (cfg.q < 1 || cfg.q > cfg.n) throw ArgumentError(fmt::format("q = {} must satisfy 1 <= q <= n", cfg.q));
    if (cfg.parallel_width < 1) throw ArgumentError("parallel_width must be >= 1");
}

std::optional<double> known_mean(const TestFunction& f) {
    const auto* p = std::get_if<Polynomial>(&f);
    if (p == nullptr || p->degree() > 2) return std::nullopt;
    const auto& c = p->coefficients;
    double out = c.empty() ? 0.0 : c[0];
    if (c.size() > 2) out += c[2];
    return out;
}

std::optional<double> reference_variance(const ExperimentConfig& cfg) {
    const auto* p = std::get_if<Polynomial>(&cfg.f);
    if (p == nullptr) return std::nullopt;
    return limit_variance(*p, ScalingLimit::from_model(cfg.n, cfg.q), cfg.dist.gamma());
}

RunSummary summarize(const std::vector<SampleRow>& rows, int n, int q, std::optional<double> known,
                     std::optional<double> reference) {
    if (rows.size() < 2) throw ArgumentError("a summary needs at least 2 samples");
    std::vector<double> values;
    values.reserve(rows.size());
    for (const auto& r : rows) values.push_back(r.value);

    RunSummary s;
    s.samples = rows.size();
    s.index_set_size = static_cast<double>(binomial(n, q));
    s.mean = sample_mean(values);
    s.variance = sample_variance(values);
    s.scaled_variance = s.index_set_size * s.variance;
    if (values.size() >= 2 * static_cast<std::size_t>(kDefaultBatches)) {
        const auto est = batch_means(values, [](std::span<const double> x) { return sample_variance(x); });
        s.scaled_variance_se = s.index_set_size * est.standard_error;
    }
    s.skewness = sample_skewness(values);
    s.excess_kurtosis = sample_excess_kurtosis(values);
    s.jarque_bera = jarque_bera(values);
    s.known_mean = known;
    s.center = known.value_or(s.mean);
    s.reference_variance = reference;
    if (reference) {
        const double root = std::sqrt(s.index_set_size);
        std::vector<double> scaled;
        scaled.reserve(values.size());
        for (double v : values) scaled.push_back(root * (v - s.center));
        s.normality = normality_test(scaled, *reference);
    }
    return s;
}

RunRecord run_ensemble(const ExperimentConfig& cfg) {
    validate(cfg);
    // throws ResourceError above the dense cap, before any sampling
    const HamiltonianBuilder builder(cfg.n, cfg.q, cfg.dense_cap);

    RunRecord rec;
    rec.config = cfg;
    rec.rows.resize(cfg.samples);
    if (cfg.dump_eigenvalues) rec.eigenvalues.resize(cfg.samples);

    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::uint64_t id = next.fetch_add(1);
            if (id >= cfg.samples) return;
            try {
                Rng rng = substream(cfg.seed, id);
                CouplingSample couplings = sample_couplings(cfg.dist, cfg.n, cfg.q, rng);
                couplings.seed = cfg.seed;
                couplings.sample_id = id;
                const HamiltonianMatrix h = builder.assemble(couplings);
                const SpectralSample spectrum = eigenvalues(h);

                SampleRow& row = rec.rows[id];
                row.sample_id = id;
                row.value = linear_statistic(spectrum, cfg.f);
                const auto m = empirical_moments(spectrum, kRecordedMoments);
                std::copy(m.begin(), m.end(), row.moments.begin());
                row.mean_square_coupling = mean_square_coupling(couplings);
                if (cfg.dump_eigenvalues) rec.eigenvalues[id] = spectrum.eigenvalues;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
                return;
            }
        }
    };

    const auto width = static_cast<std::uint64_t>(cfg.parallel_width);
    if (width == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::uint64_t t = 0; t < std::min(width, cfg.samples); ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    rec.summary = summarize(rec.rows, cfg.n, cfg.q, known_mean(cfg.f), reference_variance(cfg));
    return rec;
}

std::vector<double> scaled_fluctuations(const RunRecord& rec) {
    const double root = std::sqrt(rec.summary.index_set_size);
    std::vector<double> out;
    out.reserve(rec.rows.size());
    for (const auto& r : rec.rows) out.push_back(root * (r.value - rec.summary.center));
    return out;
}

namespace {

std::vector<double> moment_column(const RunRecord& rec, int k) {
    if (k < 0 || k > kRecordedMoments) throw ArgumentError(fmt::format("moment order {} is not recorded", k));
    std::vector<double> out;
    out.reserve(rec.rows.size());
    for (const auto& r : rec.rows) out.push_back(r.moments[static_cast<std::size_t>(k)]);
    return out;
}

double index_set_size(const RunRecord& rec) { return static_cast<double>(binomial(rec.config.n, rec.config.q)); }

} // namespace

BatchEstimate empirical_covariance(const RunRecord& rec, int k, int k_prime) {
    const auto x = moment_column(rec, k);
    const auto y = moment_column(rec, k_prime);
    const double scale = index_set_size(rec);
    auto est = batch_means(x, y, [](std::span<const double> a, std::span<const double> b) {
        return sample_covariance(a, b);
    });
    est.value *= scale;
    est.standard_error *= scale;
    return est;
}

std::uint64_t covariance_enumeration_terms(int n, int q, int k, int k_prime) {
    return moment_enumeration_terms(n, q, k + k_prime);
}

double exact_covariance_oracle(int n, int q, int k, int k_prime, const CouplingDistribution& dist, std::uint64_t guard) {
    if (k < 1 || k_prime < 1) throw ArgumentError("covariance orders must be >= 1");
    if (n % 2 != 0 || q < 1 || q > n) throw ArgumentError("need even n and 1 <= q <= n");
    const int total_order = k + k_prime;
    if (dist.symmetric() && total_order % 2 == 1) return 0.0;
    const std::uint64_t terms = covariance_enumeration_terms(n, q, k, k_prime);
    if (terms > guard) {
        throw ResourceError(fmt::format("exact covariance enumeration needs {} terms, guard is {}", terms, guard));
    }

    const auto sets = enumerate_index_set(n, q);
    auto mu = [&dist](int j) { return j == 0 ? 1.0 : dist.moment(j); };
    std::complex<double> total = 0.0;
    std::vector<IndexSet> tuple;
    for (const auto& partition : partitions_without_singletons(total_order)) {
        double joint = 1.0, split = 1.0;
        const auto all = partition.block_sizes();
        const auto first = partition.block_sizes(0, k);
        const auto second = partition.block_sizes(k, total_order);
        for (int b = 0; b < partition.blocks; ++b) {
            joint *= mu(all[b]);
            split *= mu(first[b]) * mu(second[b]);
        }
        const double weight = joint - split;
        if (weight == 0.0) continue;
        GaussianIntegerSum traces;
        for_each_injective_assignment(partition, sets, tuple, [&](const std::vector<IndexSet>& t) {
            const std::span<const IndexSet> view(t);
            const MajoranaWord a = fold_product(view.first(static_cast<std::size_t>(k)));
            if (!a.support.empty()) return;
            const MajoranaWord b = fold_product(view.subspan(static_cast<std::size_t>(k)));
            if (b.support.empty()) traces.add(a.phase * b.phase);
        });
        total += weight * std::complex<double>(static_cast<double>(traces.re), static_cast<double>(traces.im));
    }
    const double size = static_cast<double>(sets.size());
    total *= Phase::i_power((q / 2) * total_order).value();
    total *= size / std::pow(size, 0.5 * total_order);
    if (std::abs(total.imag()) > 1e-9 * std::max(1.0, std::abs(total.real()))) {
        throw ValidationError("exact covariance has a non-vanishing imaginary part");
    }
    return total.real();
}

VarianceAudit variance_bound_audit(const RunRecord& rec, int k) {
    if (rec.config.dist.kind() != CouplingDistribution::Kind::Gaussian) {
        throw ArgumentError("the explicit variance constant is only stated for Gaussian couplings");
    }
    if (k < 1 || k > kRecordedMoments) throw ArgumentError(fmt::format("k must lie in [1, {}]", kRecordedMoments));
    VarianceAudit a;
    a.k = k;
    a.constant = std::pow(2.0, k) * std::tgamma(k + 1.0) * k * k;
    if (k == 1) return a;  // Tr H = 0 identically

    const auto column = moment_column(rec, k);
    const double scale = index_set_size(rec);
    const auto est = batch_means(column, [](std::span<const double> x) { return sample_variance(x); });
    a.scaled_variance = scale * est.value;
    a.scaled_variance_se = scale * est.standard_error;
    a.ratio = a.scaled_variance / a.constant;
    a.ratio_se = a.scaled_variance_se / a.constant;
    return a;
}

VarianceAudit variance_bound_audit(int n, int q, int k, std::uint64_t samples, std::uint64_t seed, int parallel_width) {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.q = q;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.parallel_width = parallel_width;
    std::vector<double> c(static_cast<std::size_t>(std::max(k, 0)) + 1, 0.0);
    c.back() = 1.0;
    cfg.f = Polynomial{c};
    cfg.f_label = fmt::format("x^{}", k);
    if (k == 1) {
        ExperimentConfig probe = cfg;
        probe.samples = 2;
        validate(probe);
        VarianceAudit a;
        a.k = 1;
        a.constant = 2.0;
        return a;
    }
    return variance_bound_audit(run_ensemble(cfg), k);
}

LipschitzAudit lipschitz_concentration_audit(const ExperimentConfig& cfg) {
    const auto* f = std::get_if<TabulatedFunction>(&cfg.f);
    if (f == nullptr || !f->lipschitz()) {
        throw ArgumentError("the Lipschitz audit needs a tabulated test function with a declared Lipschitz constant");
    }
    if (cfg.dist.kind() != CouplingDistribution::Kind::Gaussian) {
        throw ArgumentError("the Lipschitz concentration audit assumes Gaussian couplings");
    }
    return lipschitz_concentration_audit(run_ensemble(cfg));
}

LipschitzAudit lipschitz_concentration_audit(const RunRecord& rec) {
    const auto* f = std::get_if<TabulatedFunction>(&rec.config.f);
    if (f == nullptr || !f->lipschitz()) {
        throw ArgumentError("the Lipschitz audit needs a tabulated test function with a declared Lipschitz constant");
    }
    LipschitzAudit a;
    a.lipschitz = *f->lipschitz();
    a.scaled_variance = rec.summary.scaled_variance;
    a.scaled_variance_se = rec.summary.scaled_variance_se;
    a.bound = kLipschitzAuditConstant * a.lipschitz * a.lipschitz;
    a.pass = a.scaled_variance <= a.bound;
    const double unit = a.lipschitz / std::sqrt(rec.summary.index_set_size);
    for (std::size_t m = 0; m < 3; ++m) {
        a.thresholds[m] = static_cast<double>(m + 1) * unit;
        std::uint64_t hits = 0;
        for (const auto& r : rec.rows) hits += std::abs(r.value - rec.summary.mean) >= a.thresholds[m] ? 1 : 0;
        a.tail_frequencies[m] = static_cast<double>(hits) / static_cast<double>(rec.rows.size());
    }
    return a;
}

// -- persistence ---------------------------------------------------------

void write_sample_rows(const RunRecord& rec, std::ostream& out) {
    out << "sample_id,value";
    for (int k = 2; k <= kRecordedMoments; ++k) out << ",moment_" << k;
    out << '\n';
    for (const auto& r : rec.rows) {
        fmt::print(out, "{},{:.17g}", r.sample_id, r.value);
        for (int k = 2; k <= kRecordedMoments; ++k) fmt::print(out, ",{:.17g}", r.moments[static_cast<std::size_t>(k)]);
        out << '\n';
    }
}

std::vector<SampleRow> read_sample_rows(std::istream& in) {
    std::vector<SampleRow> rows;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line.rfind("sample_id,value", 0) != 0) throw SchemaError("sample CSV is missing its header");
            header = true;
            continue;
        }
        std::istringstream fields(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(fields, cell, ',')) cells.push_back(cell);
        if (cells.size() != 2 + kRecordedMoments - 1) throw SchemaError(fmt::format("malformed sample row: {}", line));
        SampleRow r;
        try {
            r.sample_id = std::stoull(cells[0]);
            r.value = std::stod(cells[1]);
            r.moments[0] = 1.0;
            for (int k = 2; k <= kRecordedMoments; ++k) r.moments[static_cast<std::size_t>(k)] = std::stod(cells[k]);
        } catch (const std::logic_error&) {
            throw SchemaError(fmt::format("malformed sample row: {}", line));
        }
        rows.push_back(r);
    }
    return rows;
}

void write_eigenvalue_dump(const RunRecord& rec, std::ostream& out) {
    if (!rec.config.dump_eigenvalues) throw ArgumentError("the run did not keep its eigenvalues");
    out << "sample_id,rank,lambda\n";
    for (std::size_t id = 0; id < rec.eigenvalues.size(); ++id) {
        SpectralSample s;
        s.eigenvalues = rec.eigenvalues[id];
        write_eigenvalue_rows(s, id, out);
    }
}

} // namespace sykclt
