#include "sykclt/config.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

#include "sykclt/errors.hpp"

namespace sykclt {

using nlohmann::json;

namespace {

const std::vector<std::string> kKnownKeys = {"schema_version", "n",       "q",               "distribution",
                                             "test_function",  "samples", "seed",            "dump_eigenvalues",
                                             "parallel_width", "dense_cap"};

[[noreturn]] void violation(const std::string& what) { throw SchemaError("config: " + what); }

const json& require(const json& doc, const char* key) {
    if (!doc.contains(key)) violation(fmt::format("missing required key '{}'", key));
    return doc.at(key);
}

std::int64_t integer(const json& v, const char* key, std::int64_t lo, std::int64_t hi) {
    if (!v.is_number_integer()) violation(fmt::format("'{}' must be an integer", key));
    const auto x = v.get<std::int64_t>();
    if (x < lo || x > hi) violation(fmt::format("'{}' = {} outside [{}, {}]", key, x, lo, hi));
    return x;
}

std::vector<double> number_list(const json& v, const char* key) {
    if (!v.is_array() || v.empty()) violation(fmt::format("'{}' must be a non-empty array of numbers", key));
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) violation(fmt::format("'{}' must contain only numbers", key));
        out.push_back(x.get<double>());
    }
    return out;
}

CouplingDistribution parse_distribution(const json& v) {
    try {
        if (v.is_string()) return CouplingDistribution::from_name(v.get<std::string>());
        if (v.is_object()) {
            if (require(v, "kind") != "custom") violation("distribution objects must have kind 'custom'");
            return CouplingDistribution::custom(number_list(require(v, "atoms"), "atoms"),
                                                number_list(require(v, "weights"), "weights"));
        }
    } catch (const ArgumentError& e) {
        violation(e.what());
    }
    violation("'distribution' must be a name or a custom object");
}

std::string polynomial_label(const std::vector<double>& c) {
    std::string out = "poly:";
    for (std::size_t i = 0; i < c.size(); ++i) out += fmt::format("{}{:.17g}", i ? "," : "", c[i]);
    return out;
}

std::pair<TestFunction, std::string> parse_test_function(const json& v) {
    if (!v.is_object()) violation("'test_function' must be an object");
    const auto& kind = require(v, "kind");
    if (kind == "polynomial") {
        auto c = number_list(require(v, "coefficients"), "coefficients");
        auto label = polynomial_label(c);
        return {Polynomial{std::move(c)}, label};
    }
    if (kind == "named") {
        const auto& name = require(v, "name");
        if (!name.is_string()) violation("'test_function.name' must be a string");
        try {
            return {named_test_function(name.get<std::string>()), name.get<std::string>()};
        } catch (const ArgumentError& e) {
            violation(e.what());
        }
    }
    violation("'test_function.kind' must be 'polynomial' or 'named'");
}

json distribution_json(const CouplingDistribution& d) {
    if (d.kind() != CouplingDistribution::Kind::Custom) return d.name();
    return json{{"kind", "custom"}, {"atoms", d.atoms()}, {"weights", d.weights()}};
}

json test_function_json(const TestFunction& f, const std::string& label) {
    if (const auto* p = std::get_if<Polynomial>(&f)) return json{{"kind", "polynomial"}, {"coefficients", p->coefficients}};
    return json{{"kind", "named"}, {"name", label}};
}

/// Parses an override value: JSON literal if it parses, otherwise a string.
json override_value(const std::string& key, const std::string& text) {
    if (key == "test_function") {
        if (text.rfind("poly:", 0) == 0) {
            json c = json::array();
            std::istringstream in(text.substr(5));
            std::string cell;
            while (std::getline(in, cell, ',')) {
                try {
                    std::size_t used = 0;
                    c.push_back(std::stod(cell, &used));
                    if (used != cell.size()) throw std::invalid_argument(cell);
                } catch (const std::logic_error&) {
                    violation(fmt::format("bad polynomial coefficient '{}'", cell));
                }
            }
            return json{{"kind", "polynomial"}, {"coefficients", c}};
        }
        return json{{"kind", "named"}, {"name", text}};
    }
    const json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) return text;
    return parsed;
}

} // namespace

ExperimentConfig parse_config(const json& doc) {
    if (!doc.is_object()) violation("document must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
            violation(fmt::format("unknown key '{}'", key));
        }
    }
    if (integer(require(doc, "schema_version"), "schema_version", 1, 1000) != kConfigSchemaVersion) {
        violation(fmt::format("schema_version must be {}", kConfigSchemaVersion));
    }
    ExperimentConfig cfg;
    cfg.n = static_cast<int>(integer(require(doc, "n"), "n", 2, kMaxSymbolicN));
    cfg.q = static_cast<int>(integer(require(doc, "q"), "q", 1, kMaxSymbolicN));
    if (cfg.n % 2 != 0) violation("'n' must be even");
    if (cfg.q > cfg.n) violation("'q' must not exceed 'n'");
    cfg.dist = parse_distribution(require(doc, "distribution"));
    std::tie(cfg.f, cfg.f_label) = parse_test_function(require(doc, "test_function"));
    cfg.samples = static_cast<std::uint64_t>(integer(require(doc, "samples"), "samples", 2, std::int64_t{1} << 40));
    const json& seed = require(doc, "seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
        violation("'seed' must be a non-negative 64-bit integer");
    }
    cfg.seed = seed.get<std::uint64_t>();
    if (doc.contains("dump_eigenvalues")) {
        if (!doc["dump_eigenvalues"].is_boolean()) violation("'dump_eigenvalues' must be a boolean");
        cfg.dump_eigenvalues = doc["dump_eigenvalues"].get<bool>();
    }
    if (doc.contains("parallel_width")) {
        cfg.parallel_width = static_cast<int>(integer(doc["parallel_width"], "parallel_width", 1, 1024));
    }
    if (doc.contains("dense_cap")) {
        cfg.dense_cap = static_cast<int>(integer(doc["dense_cap"], "dense_cap", 2, 24));
    }
    return cfg;
}

json load_config_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(fmt::format("cannot open config '{}'", path));
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw SchemaError(fmt::format("config '{}' is not valid JSON", path));
    return doc;
}

ExperimentConfig load_config(const std::string& path) { return parse_config(load_config_document(path)); }

void apply_overrides(json& doc, const std::vector<std::string>& overrides) {
    if (!doc.is_object()) violation("document must be a JSON object");
    for (const auto& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) violation(fmt::format("override '{}' is not key=value", item));
        const std::string key = item.substr(0, eq);
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
            violation(fmt::format("unknown override key '{}'", key));
        }
        doc[key] = override_value(key, item.substr(eq + 1));
    }
}

json to_json(const ExperimentConfig& cfg) {
    json doc{{"schema_version", kConfigSchemaVersion},
             {"n", cfg.n},
             {"q", cfg.q},
             {"distribution", distribution_json(cfg.dist)},
             {"test_function", test_function_json(cfg.f, cfg.f_label)},
             {"samples", cfg.samples},
             {"seed", cfg.seed},
             {"dump_eigenvalues", cfg.dump_eigenvalues}};
    if (cfg.dense_cap != kDefaultDenseCap) doc["dense_cap"] = cfg.dense_cap;
    return doc;
}

std::string config_hash(const json& doc) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : doc.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", h);
}

json to_json(const RunSummary& s) {
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    json out{{"samples", s.samples},
             {"index_set_size", s.index_set_size},
             {"mean", s.mean},
             {"variance", s.variance},
             {"scaled_variance", s.scaled_variance},
             {"scaled_variance_se", s.scaled_variance_se},
             {"skewness", s.skewness},
             {"excess_kurtosis", s.excess_kurtosis},
             {"jarque_bera", s.jarque_bera},
             {"center", s.center},
             {"known_mean", opt(s.known_mean)},
             {"reference_variance", opt(s.reference_variance)}};
    if (s.normality) {
        out["ks"] = json{{"statistic", s.normality->ks_statistic},
                         {"critical_value", s.normality->critical_value},
                         {"alpha", 0.01},
                         {"pass", s.normality->pass},
                         {"diagnostic", s.normality->diagnostic}};
    } else {
        out["ks"] = nullptr;
    }
    return out;
}

std::string provenance_line(const std::string& subcommand, const std::string& hash, std::uint64_t seed) {
    return fmt::format("# tool=sykclt version={} subcommand={} config_hash={} seed={}", kToolVersion, subcommand, hash,
                       seed);
}

} // namespace sykclt
