#include "sykclt/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "sykclt/config.hpp"
#include "sykclt/errors.hpp"
#include "sykclt/harness.hpp"
#include "sykclt/moments.hpp"
#include "sykclt/setcomb.hpp"
#include "sykclt/smoothing.hpp"

namespace sykclt {

using nlohmann::json;

namespace {

struct Table {
    std::string name;  // file name under the output directory
    std::string body;
    bool is_json = false;
};

struct Outputs {
    std::string subcommand;
    std::string hash;
    std::uint64_t seed = 0;
    std::vector<Table> tables;

    void csv(std::string name, std::string body) { tables.push_back({std::move(name), std::move(body), false}); }
    void add_json(std::string name, json doc) {
        doc["provenance"] = json{{"tool", "sykclt"}, {"version", kToolVersion}, {"config_hash", hash}, {"seed", seed}};
        tables.push_back({std::move(name), doc.dump(2) + "\n", true});
    }
};

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return fmt::format("{:.17g}", v);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string cell;
    while (std::getline(in, cell, sep)) {
        if (!cell.empty()) out.push_back(cell);
    }
    return out;
}

void emit(const Outputs& o, const std::string& dir, std::ostream& out) {
    const std::string header = provenance_line(o.subcommand, o.hash, o.seed);
    if (dir.empty()) {
        for (const auto& t : o.tables) {
            out << "# table=" << t.name << '\n';
            if (!t.is_json) out << header << '\n';
            out << t.body;
        }
        return;
    }
    std::filesystem::create_directories(dir);
    for (const auto& t : o.tables) {
        const auto path = std::filesystem::path(dir) / t.name;
        std::ofstream file(path);
        if (!file) throw ResourceError(fmt::format("cannot write '{}'", path.string()));
        if (!t.is_json) file << header << '\n';
        file << t.body;
        out << path.string() << '\n';
    }
}

// -- subcommands ---------------------------------------------------------

struct MomentsArgs {
    int k_max = 8;
    std::string a = "0,1,inf";
};

Outputs run_moments(const MomentsArgs& args) {
    if (args.k_max < 1 || args.k_max > kMaxPartitionOrder) {
        throw ArgumentError(fmt::format("--k-max must lie in [1, {}]", kMaxPartitionOrder));
    }
    std::vector<ScalingLimit> limits;
    json a_list = json::array();
    for (const auto& text : split(args.a, ',')) {
        limits.push_back(ScalingLimit::parse(text));
        a_list.push_back(limits.back().to_string());
    }
    if (limits.empty()) throw ArgumentError("--a needs at least one value");
    Outputs o{"moments", config_hash(json{{"subcommand", "moments"}, {"k_max", args.k_max}, {"a", a_list}}), 0, {}};
    std::string body = "k,a,m_k_a\n";
    for (int k = 1; k <= args.k_max; ++k) {
        for (const auto& a : limits) body += fmt::format("{},{},{}\n", k, a.to_string(), format_double(m_k_a(k, a)));
    }
    o.csv("moments.csv", body);
    return o;
}

struct SampleArgs {
    int n = 8;
    int q = 4;
    std::string distribution = "gaussian";
    std::uint64_t seed = 0;
    std::uint64_t sample_id = 0;
    int dense_cap = kDefaultDenseCap;
};

Outputs run_sample(const SampleArgs& args) {
    const auto dist = CouplingDistribution::from_name(args.distribution);
    const json params{{"subcommand", "sample"}, {"n", args.n},       {"q", args.q},
                      {"distribution", args.distribution}, {"sample_id", args.sample_id}, {"dense_cap", args.dense_cap}};
    Outputs o{"sample", config_hash(params), args.seed, {}};
    const HamiltonianBuilder builder(args.n, args.q, args.dense_cap);
    Rng rng = substream(args.seed, args.sample_id);
    CouplingSample couplings = sample_couplings(dist, args.n, args.q, rng);
    couplings.seed = args.seed;
    couplings.sample_id = args.sample_id;
    const auto spectrum = eigenvalues(builder.assemble(couplings));

    std::ostringstream c;
    write_coupling_csv(couplings, c);
    o.csv("couplings.csv", c.str());
    std::ostringstream e;
    e << "sample_id,rank,lambda\n";
    write_eigenvalue_rows(spectrum, args.sample_id, e);
    o.csv("eigenvalues.csv", e.str());
    std::string m = "k,moment\n";
    const auto moments = empirical_moments(spectrum, kRecordedMoments);
    for (std::size_t k = 0; k < moments.size(); ++k) m += fmt::format("{},{}\n", k, format_double(moments[k]));
    o.csv("moments.csv", m);
    return o;
}

struct ConfigArgs {
    std::string config;
    std::vector<std::string> overrides;
    int parallel_width = 0;  // 0 keeps the config value
};

ExperimentConfig resolve_config(const ConfigArgs& args) {
    json doc = load_config_document(args.config);
    apply_overrides(doc, args.overrides);
    ExperimentConfig cfg = parse_config(doc);
    if (args.parallel_width > 0) cfg.parallel_width = args.parallel_width;
    return cfg;
}

Outputs run_clt(const ConfigArgs& args) {
    const ExperimentConfig cfg = resolve_config(args);
    const json canonical = to_json(cfg);
    Outputs o{"clt", config_hash(canonical), cfg.seed, {}};
    const RunRecord rec = run_ensemble(cfg);
    o.tables.push_back({"config.json", canonical.dump(2) + "\n", true});
    std::ostringstream rows;
    write_sample_rows(rec, rows);
    o.csv("samples.csv", rows.str());
    o.add_json("summary.json", to_json(rec.summary));
    if (cfg.dump_eigenvalues) {
        std::ostringstream e;
        write_eigenvalue_dump(rec, e);
        o.csv("eigenvalues.csv", e.str());
    }
    return o;
}

struct CovArgs {
    ConfigArgs config;
    int k = 2;
    int k_prime = 4;
    bool oracle = false;
};

Outputs run_cov(const CovArgs& args) {
    const ExperimentConfig cfg = resolve_config(args.config);
    json canonical = to_json(cfg);
    canonical["k"] = args.k;
    canonical["k_prime"] = args.k_prime;
    Outputs o{"cov", config_hash(canonical), cfg.seed, {}};
    if (args.k < 1 || args.k > kRecordedMoments || args.k_prime < 1 || args.k_prime > kRecordedMoments) {
        throw ArgumentError(fmt::format("--k and --k-prime must lie in [1, {}]", kRecordedMoments));
    }
    // guard before the ensemble so a refused oracle costs nothing
    if (args.oracle && covariance_enumeration_terms(cfg.n, cfg.q, args.k, args.k_prime) > kDefaultEnumerationGuard) {
        throw ResourceError("exact covariance enumeration exceeds the guard");
    }
    const RunRecord rec = run_ensemble(cfg);
    const auto est = empirical_covariance(rec, args.k, args.k_prime);
    const auto a = ScalingLimit::from_model(cfg.n, cfg.q);
    const double limit = covariance_limit(args.k, args.k_prime, a, cfg.dist.gamma());
    const double oracle = args.oracle ? exact_covariance_oracle(cfg.n, cfg.q, args.k, args.k_prime, cfg.dist)
                                      : std::numeric_limits<double>::quiet_NaN();
    o.csv("covariance.csv",
          fmt::format("k,k_prime,scaled_covariance,standard_error,a,limit,exact\n{},{},{},{},{},{},{}\n", args.k,
                      args.k_prime, format_double(est.value), format_double(est.standard_error), a.to_string(),
                      format_double(limit), format_double(oracle)));
    return o;
}

struct BmArgs {
    int n = 4;
    int q = 2;
    int m = 4;
    std::uint64_t guard = kBruteForceGuard;
};

Outputs run_bm(const BmArgs& args) {
    if (args.m < 1) throw ArgumentError("--m must be >= 1");
    if (args.q < 1 || args.q > args.n) throw ArgumentError("need 1 <= q <= n");
    Outputs o{"bm", config_hash(json{{"subcommand", "bm"}, {"n", args.n}, {"q", args.q}, {"m", args.m}}), 0, {}};
    std::string count;
    std::string ratio = "nan";
    if (bruteforce_feasible(args.n, args.q, args.m, args.guard)) {
        count = std::to_string(count_Bm_bruteforce(args.n, args.q, args.m, false, args.guard));
        ratio = format_double(bm_bound_ratio(args.n, args.q, args.m, args.guard));
    } else if (args.m == 3) {
        count = count_B3_exact(args.n, args.q).str();
    } else if (args.m == 4) {
        count = count_B4_exact(args.n, args.q).str();
    } else {
        throw ResourceError(fmt::format("brute force for m = {} exceeds the guard and no closed form is available", args.m));
    }
    o.csv("bm.csv", fmt::format("n,q,m,count,ratio\n{},{},{},{},{}\n", args.n, args.q, args.m, count, ratio));
    return o;
}

struct PoissonArgs {
    int n = 400;
    int q = 20;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
};

Outputs run_poisson(const PoissonArgs& args) {
    const json params{{"subcommand", "poisson-check"}, {"n", args.n}, {"q", args.q}, {"trials", args.trials}};
    Outputs o{"poisson-check", config_hash(params), args.seed, {}};
    Rng rng = substream(args.seed, 0);
    const auto hist = intersection_histogram(args.n, args.q, args.trials, rng);
    const auto empirical = hist.pmf();
    const auto exact = hypergeometric_overlap_pmf(args.n, args.q);
    const double mean = static_cast<double>(args.q) * args.q / args.n;
    const auto pois = poisson_pmf(mean, args.q);
    std::string body = "overlap,empirical,hypergeometric,poisson\n";
    for (int j = 0; j <= args.q; ++j) {
        const auto i = static_cast<std::size_t>(j);
        body += fmt::format("{},{},{},{}\n", j, format_double(empirical[i]), format_double(exact[i]), format_double(pois[i]));
    }
    o.csv("overlap.csv", body);
    o.csv("tv.csv", fmt::format("comparison,tv\nhypergeometric_vs_poisson,{}\nempirical_vs_hypergeometric,{}\n",
                                format_double(tv_distance_to_poisson(exact, mean)),
                                format_double(tv_distance(empirical, exact))));
    return o;
}

struct FejerArgs {
    std::vector<double> lambdas{4.0, 16.0, 64.0};
    double x_min = -3.0;
    double x_max = 3.0;
    std::size_t points = 601;
    std::string function = "abs_clipped";
    std::size_t grid_nodes = 2401;
};

Outputs run_fejer(const FejerArgs& args) {
    if (args.points < 2 || args.grid_nodes < 2 || !(args.x_max > args.x_min)) {
        throw ArgumentError("need x_max > x_min and at least 2 points");
    }
    const json params{{"subcommand", "fejer"}, {"lambda", args.lambdas},   {"x_min", args.x_min}, {"x_max", args.x_max},
                      {"points", args.points}, {"function", args.function}, {"grid_nodes", args.grid_nodes}};
    Outputs o{"fejer", config_hash(params), 0, {}};
    const auto f = named_test_function(args.function);
    std::string kernel = "lambda,x,K\n";
    std::string errors = "lambda,sup_error\n";
    const double step = (args.x_max - args.x_min) / static_cast<double>(args.points - 1);
    for (double lambda : args.lambdas) {
        const FejerKernel k(lambda);
        for (std::size_t i = 0; i < args.points; ++i) {
            const double x = args.x_min + step * static_cast<double>(i);
            kernel += fmt::format("{},{},{}\n", format_double(lambda), format_double(x), format_double(fejer_eval(k, x)));
        }
        const double err = smoothing_sup_error(f, lambda, SmoothingGrid{args.x_min, args.x_max, args.grid_nodes});
        errors += fmt::format("{},{}\n", format_double(lambda), format_double(err));
    }
    o.csv("kernel.csv", kernel);
    o.csv("sup_error.csv", errors);
    return o;
}

struct AuditArgs {
    int n = 16;
    int q = 4;
    std::uint64_t samples = 2000;
    std::uint64_t seed = 1;
    std::vector<int> ks{2, 3, 4, 6};
    std::vector<std::string> functions = lipschitz_menu();
    int parallel_width = 1;
};

Outputs run_audit(const AuditArgs& args) {
    const json params{{"subcommand", "audit"}, {"n", args.n},   {"q", args.q},
                      {"samples", args.samples}, {"k", args.ks}, {"functions", args.functions}};
    Outputs o{"audit", config_hash(params), args.seed, {}};
    ExperimentConfig base;
    base.n = args.n;
    base.q = args.q;
    base.samples = args.samples;
    base.seed = args.seed;
    base.parallel_width = args.parallel_width;

    std::string body = "check,parameter,value,standard_error,bound,pass\n";
    std::string tails = "function,multiple,threshold,frequency\n";
    const RunRecord moments = run_ensemble(base);
    for (int k : args.ks) {
        const auto a = variance_bound_audit(moments, k);
        const bool pass = a.ratio <= 1.0 + 3.0 * a.ratio_se;
        body += fmt::format("variance_bound,k={},{},{},1,{}\n", k, format_double(a.ratio), format_double(a.ratio_se),
                            pass ? "true" : "false");
    }
    for (const auto& name : args.functions) {
        ExperimentConfig cfg = base;
        cfg.f = named_test_function(name);
        cfg.f_label = name;
        const auto a = lipschitz_concentration_audit(cfg);
        body += fmt::format("lipschitz_concentration,{},{},{},{},{}\n", name, format_double(a.scaled_variance),
                            format_double(a.scaled_variance_se), format_double(a.bound), a.pass ? "true" : "false");
        for (std::size_t m = 0; m < 3; ++m) {
            tails += fmt::format("{},{},{},{}\n", name, m + 1, format_double(a.thresholds[m]),
                                 format_double(a.tail_frequencies[m]));
        }
    }
    o.csv("audit.csv", body);
    o.csv("tails.csv", tails);
    return o;
}

void error_json(std::ostream& err, const char* kind, const std::string& message, int code) {
    err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
}

void add_config_options(CLI::App* cmd, ConfigArgs& args) {
    cmd->add_option("--config", args.config, "experiment config (JSON)")->required();
    cmd->add_option("--set", args.overrides, "key=value override, repeatable");
    cmd->add_option("--parallel-width", args.parallel_width, "worker threads")->check(CLI::Range(1, 1024));
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"SYK linear-statistics laboratory", "sykclt"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kToolVersion);
    std::string out_dir;
    app.add_option("--out", out_dir, "output directory (default $SYKCLT_OUTPUT_DIR, else stdout)");

    MomentsArgs moments;
    auto* c_moments = app.add_subcommand("moments", "table of m_k^a");
    c_moments->add_option("--k-max", moments.k_max);
    c_moments->add_option("--a", moments.a, "comma-separated a values, 'inf' allowed");

    SampleArgs sample;
    auto* c_sample = app.add_subcommand("sample", "one Hamiltonian: couplings, spectrum, moments");
    c_sample->add_option("--n", sample.n);
    c_sample->add_option("--q", sample.q);
    c_sample->add_option("--distribution", sample.distribution);
    c_sample->add_option("--seed", sample.seed);
    c_sample->add_option("--sample-id", sample.sample_id);
    c_sample->add_option("--dense-cap", sample.dense_cap);

    ConfigArgs clt;
    auto* c_clt = app.add_subcommand("clt", "Monte Carlo ensemble of L_n(f)");
    add_config_options(c_clt, clt);

    CovArgs cov;
    auto* c_cov = app.add_subcommand("cov", "scaled covariance of two trace moments");
    add_config_options(c_cov, cov.config);
    c_cov->add_option("--k", cov.k);
    c_cov->add_option("--k-prime", cov.k_prime);
    c_cov->add_flag("--oracle", cov.oracle, "also compute the exact finite-n covariance");

    BmArgs bm;
    auto* c_bm = app.add_subcommand("bm", "count B_m tuples");
    c_bm->add_option("--n", bm.n)->required();
    c_bm->add_option("--q", bm.q)->required();
    c_bm->add_option("--m", bm.m)->required();
    c_bm->add_option("--guard", bm.guard);

    PoissonArgs poisson;
    auto* c_poisson = app.add_subcommand("poisson-check", "overlap law of two random q-subsets");
    c_poisson->add_option("--n", poisson.n);
    c_poisson->add_option("--q", poisson.q);
    c_poisson->add_option("--trials", poisson.trials);
    c_poisson->add_option("--seed", poisson.seed);

    FejerArgs fejer;
    auto* c_fejer = app.add_subcommand("fejer", "Fejer kernel table and smoothing errors");
    c_fejer->add_option("--lambda", fejer.lambdas)->delimiter(',');
    c_fejer->add_option("--x-min", fejer.x_min);
    c_fejer->add_option("--x-max", fejer.x_max);
    c_fejer->add_option("--points", fejer.points);
    c_fejer->add_option("--function", fejer.function);
    c_fejer->add_option("--grid-nodes", fejer.grid_nodes);

    AuditArgs audit;
    auto* c_audit = app.add_subcommand("audit", "variance-bound and Lipschitz concentration audits");
    c_audit->add_option("--n", audit.n);
    c_audit->add_option("--q", audit.q);
    c_audit->add_option("--samples", audit.samples);
    c_audit->add_option("--seed", audit.seed);
    c_audit->add_option("--k", audit.ks)->delimiter(',');
    c_audit->add_option("--functions", audit.functions)->delimiter(',');
    c_audit->add_option("--parallel-width", audit.parallel_width)->check(CLI::Range(1, 1024));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        error_json(err, "usage", e.what(), kExitSchema);
        return kExitSchema;
    }

    if (out_dir.empty()) {
        if (const char* env = std::getenv("SYKCLT_OUTPUT_DIR")) out_dir = env;
    }

    try {
        Outputs o;
        if (*c_moments) o = run_moments(moments);
        else if (*c_sample) o = run_sample(sample);
        else if (*c_clt) o = run_clt(clt);
        else if (*c_cov) o = run_cov(cov);
        else if (*c_bm) o = run_bm(bm);
        else if (*c_poisson) o = run_poisson(poisson);
        else if (*c_fejer) o = run_fejer(fejer);
        else o = run_audit(audit);
        emit(o, out_dir, out);
        return kExitOk;
    } catch (const SchemaError& e) {
        error_json(err, "schema_violation", e.what(), kExitSchema);
        return kExitSchema;
    } catch (const ArgumentError& e) {
        error_json(err, "invalid_argument", e.what(), kExitSchema);
        return kExitSchema;
    } catch (const DimensionError& e) {
        error_json(err, "invalid_argument", e.what(), kExitSchema);
        return kExitSchema;
    } catch (const ResourceError& e) {
        error_json(err, "resource_guard", e.what(), kExitResource);
        return kExitResource;
    } catch (const ValidationError& e) {
        error_json(err, "numeric_validation", e.what(), kExitNumeric);
        return kExitNumeric;
    } catch (const std::exception& e) {
        error_json(err, "internal", e.what(), kExitFailure);
        return kExitFailure;
    }
}

} // namespace sykclt
