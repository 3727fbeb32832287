// Command-line front end: triangle, poly, roots, moments, normality, mode,
// sample, verify.
//
// Exit codes: 0 ok, 1 verification/certification failure, 2 usage error,
// 3 resource refusal.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "stirling/io.hpp"
#include "stirling/stirling.hpp"
#include "stirling/verify.hpp"

namespace {

using namespace stirling;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRefused = 3;

constexpr std::size_t kTriangleCap = 5000;
constexpr std::size_t kRootsCap = 300;
constexpr std::size_t kMomentsCap = 100000;
constexpr std::size_t kSampleOrderCap = 1000000;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string format = "csv";
    std::string out_path;
    std::optional<std::uint64_t> seed;
    bool quick = false;
    std::string cache_path;

    std::size_t n = 0;
    std::size_t n_max = 0;
    std::string stat = "descents";
    bool oracle = false;
    bool interlace = false;
    std::string width;
    std::string route = "derivative";
    bool with_ks = false;
    std::size_t samples = 0;
    bool exact = false;
    std::string plot_pmf;
    std::string plot_normal;
    std::size_t count = 1;
    bool stats_only = false;
    std::string suite = "all";
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw UsageError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void require_cap(std::size_t n, std::size_t cap, const char* what) {
    if (n > cap) {
        throw ResourceRefusal(std::string(what) + " refused for n = " + std::to_string(n) + ": limit is " +
                              std::to_string(cap));
    }
}

void require_order(std::size_t n, const char* flag) {
    if (n < 1) throw UsageError(std::string(flag) + " must be at least 1");
}

Statistic statistic_of(const RunConfig& cfg) {
    auto s = parse_statistic(cfg.stat);
    if (!s) throw UsageError("unknown statistic '" + cfg.stat + "'");
    return *s;
}

void load_cache(const RunConfig& cfg) {
    if (cfg.cache_path.empty() || !std::filesystem::exists(cfg.cache_path)) return;
    std::ifstream in(cfg.cache_path);
    TriangleMemo::instance().preload(io::read_triangle_cache(in));
}

void save_cache(const RunConfig& cfg) {
    if (cfg.cache_path.empty()) return;
    const auto rows = TriangleMemo::instance().snapshot();
    if (rows.empty()) return;
    std::ofstream out(cfg.cache_path, std::ios::binary);
    io::write_triangle_cache(out, rows);
}

int cmd_triangle(const RunConfig& cfg) {
    require_order(cfg.n_max, "--n-max");
    require_cap(cfg.n_max, kTriangleCap, "triangle");
    const Statistic stat = statistic_of(cfg);
    std::vector<TriangleRow> rows;
    rows.reserve(cfg.n_max);
    for (std::size_t n = 1; n <= cfg.n_max; ++n) rows.push_back(TriangleMemo::instance().row(n));
    const StatisticTriangle t(stat, std::move(rows));
    Output out(cfg.out_path);
    out.stream() << (cfg.format == "json" ? io::triangle_json(t) : io::triangle_csv(t));
    if (!cfg.oracle) return kExitOk;
    const std::size_t limit = std::min<std::size_t>(cfg.n_max, 8);
    for (std::size_t n = 1; n <= limit; ++n) {
        if (brute_force_triangle(n, stat) != t.row(n)) {
            std::cerr << "oracle disagreement at n = " << n << "\n";
            return kExitFailure;
        }
    }
    std::cerr << "oracle agrees for n <= " << limit << "\n";
    return kExitOk;
}

int cmd_poly(const RunConfig& cfg) {
    require_order(cfg.n, "--n");
    require_cap(cfg.n, kTriangleCap, "poly");
    IntPolynomial p;
    if (cfg.route == "derivative") {
        p = polynomial_by_derivative_recurrence(cfg.n);
    } else if (cfg.route == "triangle") {
        p = polynomial_from_row(TriangleMemo::instance().row(cfg.n));
    } else {
        throw UsageError("unknown route '" + cfg.route + "'");
    }
    Output out(cfg.out_path);
    auto& os = out.stream();
    if (cfg.format == "json") {
        os << "{\"n\": " << cfg.n << ", \"coefficients\": [";
        for (std::size_t i = 0; i < p.coeffs().size(); ++i) os << (i ? ", " : "") << p.coeffs()[i].get_str();
        os << "]}\n";
    } else {
        os << "degree,coefficient\n";
        for (std::size_t i = 0; i < p.coeffs().size(); ++i) os << i << "," << p.coeffs()[i].get_str() << "\n";
    }
    return kExitOk;
}

int cmd_roots(const RunConfig& cfg) {
    require_order(cfg.n, "--n");
    require_cap(cfg.n, kRootsCap, "roots");
    RealRootCertificate cert = certify_real_roots(cfg.n);
    if (!cfg.width.empty() && cert.verified) {
        Rational width;
        try {
            width = io::parse_rational(cfg.width);
        } catch (const io::FormatError&) {
            throw UsageError("--width must be a rational such as 1/1000");
        }
        if (width <= 0) throw UsageError("--width must be positive");
        const SturmChain chain(polynomial_from_row(TriangleMemo::instance().row(cfg.n)));
        for (auto& iv : cert.isolating_intervals) iv = refine_interval(chain, iv, width);
    }
    Output out(cfg.out_path);
    bool ok = cert.verified;
    if (cfg.interlace) {
        if (cfg.n < 2) throw UsageError("--interlace requires --n >= 2");
        const InterlaceCertificate inter = interlace_certificate(cfg.n);
        ok = ok && inter.verified;
        std::string a = io::certificate_json(cert);
        std::string b = io::interlace_json(inter);
        a.pop_back();
        b.pop_back();
        out.stream() << "{\"certificate\": " << a << ",\n\"interlace\": " << b << "}\n";
    } else {
        out.stream() << io::certificate_json(cert);
    }
    return ok ? kExitOk : kExitFailure;
}

io::MomentsRecord moments_record(std::size_t n, bool with_ks) {
    const Moments m = moments_exact(n);
    io::MomentsRecord r{n, m.mean, m.variance, m.second_moment, std::nullopt, std::nullopt};
    if (with_ks && n >= 2) r.ks_exact = ks_distance_exact(n);
    return r;
}

void write_moments(const RunConfig& cfg, const std::vector<io::MomentsRecord>& records) {
    Output out(cfg.out_path);
    out.stream() << (cfg.format == "json" ? io::moments_json(records) : io::moments_csv(records));
}

int cmd_moments(const RunConfig& cfg) {
    std::size_t lo = cfg.n;
    std::size_t hi = cfg.n;
    if (cfg.n_max != 0) {
        lo = 1;
        hi = cfg.n_max;
    }
    require_order(hi, "--n / --n-max");
    require_cap(hi, kMomentsCap, "moments");
    std::vector<io::MomentsRecord> records;
    for (std::size_t n = lo; n <= hi; ++n) records.push_back(moments_record(n, cfg.with_ks));
    write_moments(cfg, records);
    return kExitOk;
}

int cmd_normality(const RunConfig& cfg) {
    require_order(cfg.n, "--n");
    if (cfg.n < 2) throw UsageError("normality requires --n >= 2");
    const bool empirical = cfg.samples > 0;
    const bool exact = cfg.exact || !empirical;
    if (exact) require_cap(cfg.n, kTriangleCap, "exact normality");
    require_cap(cfg.n, kSampleOrderCap, "sampling");
    if (empirical && !cfg.seed) throw UsageError("--seed is required when sampling");

    io::MomentsRecord r = moments_record(cfg.n, false);
    if (exact) r.ks_exact = ks_distance_exact(cfg.n);
    if (empirical) r.ks_empirical = ks_distance_empirical(cfg.n, cfg.samples, *cfg.seed);
    write_moments(cfg, {r});

    if (!cfg.plot_pmf.empty()) {
        const NormalizedDistribution d = normalized_distribution(cfg.n);
        const double sigma = std::sqrt(to_double(d.variance));
        std::ofstream f(cfg.plot_pmf, std::ios::binary);
        f << "t,density\n";
        // Atoms are 1/sigma apart, so p_k * sigma is the matching density height.
        for (std::size_t k = 0; k < d.pmf.size(); ++k) {
            f << io::format_double(d.standardized_support[k]) << "," << io::format_double(to_double(d.pmf[k]) * sigma)
              << "\n";
        }
    }
    if (!cfg.plot_normal.empty()) {
        std::ofstream f(cfg.plot_normal, std::ios::binary);
        f << "t,density\n";
        for (int i = -400; i <= 400; ++i) {
            const double t = i / 100.0;
            f << io::format_double(t) << "," << io::format_double(normal_pdf(t)) << "\n";
        }
    }
    return kExitOk;
}

std::string join(const std::vector<std::size_t>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
    return out;
}

int cmd_mode(const RunConfig& cfg) {
    require_order(cfg.n, "--n");
    require_cap(cfg.n, kTriangleCap, "mode");
    const ModeReport m = locate_mode(cfg.n);
    Output out(cfg.out_path);
    auto& os = out.stream();
    if (cfg.format == "json") {
        os << "{\"n\": " << m.n << ", \"mu\": " << io::json_pair(m.mu) << ", \"argmax\": [" << join(m.argmax_indices, ", ")
           << "], \"candidates\": [" << join(m.darroch_candidates, ", ") << "], \"within_bound\": "
           << (m.within_darroch_bound ? "true" : "false")
           << ", \"argmax_in_candidates\": " << (m.argmax_in_candidates ? "true" : "false") << "}\n";
    } else {
        os << "n,mu,mu_decimal,argmax,candidates,within_bound,argmax_in_candidates\n";
        os << m.n << "," << to_string(m.mu) << "," << io::format_double(to_double(m.mu)) << ","
           << join(m.argmax_indices, ";") << "," << join(m.darroch_candidates, ";") << ","
           << (m.within_darroch_bound ? "true" : "false") << "," << (m.argmax_in_candidates ? "true" : "false")
           << "\n";
    }
    return m.within_darroch_bound && m.argmax_in_candidates ? kExitOk : kExitFailure;
}

int cmd_sample(const RunConfig& cfg) {
    require_order(cfg.n, "--n");
    require_cap(cfg.n, kSampleOrderCap, "sampling");
    if (!cfg.seed) throw UsageError("--seed is required for sample");
    SplitMix64 rng(*cfg.seed);
    Output out(cfg.out_path);
    auto& os = out.stream();
    if (cfg.stats_only) os << "ascents,descents,plateaux\n";
    for (std::size_t s = 0; s < cfg.count; ++s) {
        const StirlingPermutation q = sample_uniform(cfg.n, rng);
        if (cfg.stats_only) {
            const StatCounts c = q.statistics();
            os << c.ascents << "," << c.descents << "," << c.plateaux << "\n";
        } else {
            os << q.to_string() << "\n";
        }
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
    const auto& names = verify::suite_names();
    if (cfg.suite != "all" && std::find(names.begin(), names.end(), cfg.suite) == names.end()) {
        throw UsageError("unknown suite '" + cfg.suite + "'");
    }
    const auto results = verify::run_suite(cfg.suite, cfg.quick);
    Output out(cfg.out_path);
    auto& os = out.stream();
    std::size_t failed = 0;
    for (const auto& r : results) {
        os << (r.passed ? "PASS" : "FAIL") << "  " << r.suite << ": " << r.name;
        if (!r.passed) {
            os << "  -- " << r.detail;
            ++failed;
        }
        os << "\n";
    }
    os << results.size() - failed << "/" << results.size() << " checks passed\n";
    return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stirling permutation statistics: triangles, real-root certificates, moments, normality"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::uint64_t seed = 0;

    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
    auto* seed_opt = app.add_option("--seed", seed, "Seed for any sampling command");
    app.add_flag("--quick", cfg.quick, "Smaller ranges for verify");
    app.add_option("--cache", cfg.cache_path, "Triangle cache file (read if present, rewritten after the run)");

    auto* triangle = app.add_subcommand("triangle", "Rows 1..n-max of the statistic triangle");
    triangle->add_option("--n-max", cfg.n_max)->required();
    triangle->add_option("--stat", cfg.stat)->check(CLI::IsMember({"descents", "ascents", "plateaux"}));
    triangle->add_flag("--oracle", cfg.oracle, "Cross-check rows n <= 8 by enumeration");

    auto* poly = app.add_subcommand("poly", "Coefficients of C_n(x)");
    poly->add_option("--n", cfg.n)->required();
    poly->add_option("--route", cfg.route, "derivative | triangle");

    auto* roots = app.add_subcommand("roots", "Real-root certificate for C_n(x)");
    roots->add_option("--n", cfg.n)->required();
    roots->add_flag("--interlace", cfg.interlace, "Also certify interlacing with C_{n-1}");
    roots->add_option("--width", cfg.width, "Refine displayed intervals to this width, e.g. 1/1000");

    auto* moments = app.add_subcommand("moments", "Exact mean, second moment and variance");
    moments->add_option("--n", cfg.n);
    moments->add_option("--n-max", cfg.n_max, "Emit rows for n = 1..n-max");
    moments->add_flag("--ks", cfg.with_ks, "Include the exact KS distance");

    auto* normality = app.add_subcommand("normality", "KS distance of the standardized statistic from N(0,1)");
    normality->add_option("--n", cfg.n)->required();
    normality->add_option("--samples", cfg.samples, "Monte Carlo sample count (requires --seed)");
    normality->add_flag("--exact", cfg.exact, "Exact KS distance (default unless --samples is given)");
    normality->add_option("--plot-pmf", cfg.plot_pmf, "Write standardized pmf density as t,density CSV");
    normality->add_option("--plot-normal", cfg.plot_normal, "Write the N(0,1) density as t,density CSV");

    auto* mode = app.add_subcommand("mode", "Peak location of row n");
    mode->add_option("--n", cfg.n)->required();

    auto* sample = app.add_subcommand("sample", "Uniform samples from Q_n");
    sample->add_option("--n", cfg.n)->required();
    sample->add_option("--count", cfg.count, "Number of samples");
    sample->add_flag("--stats", cfg.stats_only, "Emit statistic counts instead of words");

    auto* verify = app.add_subcommand("verify", "Run invariant suites");
    verify->add_option("--suite", cfg.suite)
        ->check(CLI::IsMember({"all", "triangle", "realroots", "interlace", "moments", "identities", "sampler", "clt"}));

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (*seed_opt) cfg.seed = seed;

    try {
        load_cache(cfg);
        int code = kExitUsage;
        if (app.got_subcommand(triangle)) code = cmd_triangle(cfg);
        if (app.got_subcommand(poly)) code = cmd_poly(cfg);
        if (app.got_subcommand(roots)) code = cmd_roots(cfg);
        if (app.got_subcommand(moments)) {
            if (cfg.n == 0 && cfg.n_max == 0) throw UsageError("moments needs --n or --n-max");
            code = cmd_moments(cfg);
        }
        if (app.got_subcommand(normality)) code = cmd_normality(cfg);
        if (app.got_subcommand(mode)) code = cmd_mode(cfg);
        if (app.got_subcommand(sample)) code = cmd_sample(cfg);
        if (app.got_subcommand(verify)) code = cmd_verify(cfg);
        save_cache(cfg);
        return code;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceRefusal& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitRefused;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
