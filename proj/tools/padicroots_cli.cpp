#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp" // vendored single-header argument parser

#include "padicroots/acceptance.hpp"
#include "padicroots/distribution.hpp"
#include "padicroots/moments.hpp"
#include "padicroots/poly.hpp"
#include "padicroots/prime.hpp"
#include "padicroots/report_json.hpp"
#include "padicroots/root_counting.hpp"
#include "padicroots/simulate.hpp"

namespace {

using namespace padic;

// Exit codes shared by every subcommand.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAssumption = 3;

// Residue enumeration is dense in p, so counting commands reject primes
// whose per-residue output would be meaninglessly huge.
constexpr std::uint64_t kMaxCountingPrime = 1ull << 20;

// Brute-force oracles enumerate p^m objects; cap the total work.
constexpr double kMaxOracleEnumeration = 2e7;

mpz_class parse_mpz(const std::string& text) {
    try {
        return mpz_class(text);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
}

// Accepts "3", "-1", and "num/den" forms.
Rational parse_rational(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("not a rational: '" + text + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    for (char c : text) {
        if (c == sep) {
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            item += c;
        }
    }
    if (!item.empty()) out.push_back(item);
    return out;
}

unsigned long workers_from_env(unsigned long fallback) {
    const char* raw = std::getenv("PADIC_WORKERS");
    if (raw == nullptr || *raw == '\0') return fallback;
    char* end = nullptr;
    const unsigned long value = std::strtoul(raw, &end, 10);
    if (end == raw || *end != '\0' || value == 0)
        throw std::invalid_argument("PADIC_WORKERS must be a positive integer, got '" + std::string(raw) + "'");
    return value;
}

// Writes to the file when a path was given, to stdout otherwise.
void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
}

/**
 * One Monte Carlo run as described by a flat key=value config file, with
 * every key overridable by a command-line flag of the same name.
 */
struct SimulateSpec {
    std::string mode = "estimate"; // estimate|main|nonunit|scaled|upsilon|tail
    std::uint64_t prime = 0;
    std::string kind = "finite"; // finite|haar|haar_multiple_of_p|upsilon
    std::string values;          // comma-separated integers, finite kind only
    std::string weights;         // comma-separated rationals, optional
    unsigned long precision = 0; // residue digits; 0 derives 2k-1 from henselian_level
    unsigned long level = 0;     // upsilon level
    unsigned long degree = 1;
    unsigned long d = 1;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    unsigned long workers = 0; // 0 = PADIC_WORKERS, else 1
    std::string condition = "none";
    unsigned long henselian_level = 20;
    std::string threshold = "log_n"; // tail mode: log_n|power
    double lambda = 1.0;             // tail mode, power threshold exponent
};

// Flat INI: `key = value` lines, '#' or ';' comments, no sections.
void load_simulate_ini(const std::string& path, SimulateSpec& spec) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const char* ws = " \t\r\n";
        const auto a = s.find_first_not_of(ws);
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(ws);
        return s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.resize(cut);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto as_u64 = [&](const std::string& v) {
            std::size_t used = 0;
            const std::uint64_t parsed = std::stoull(v, &used);
            if (used != v.size()) throw std::invalid_argument("trailing characters");
            return parsed;
        };
        try {
            if (key == "mode") spec.mode = value;
            else if (key == "prime") spec.prime = as_u64(value);
            else if (key == "kind") spec.kind = value;
            else if (key == "values") spec.values = value;
            else if (key == "weights") spec.weights = value;
            else if (key == "precision") spec.precision = static_cast<unsigned long>(as_u64(value));
            else if (key == "level") spec.level = static_cast<unsigned long>(as_u64(value));
            else if (key == "degree") spec.degree = static_cast<unsigned long>(as_u64(value));
            else if (key == "d") spec.d = static_cast<unsigned long>(as_u64(value));
            else if (key == "samples") spec.samples = as_u64(value);
            else if (key == "seed") spec.seed = as_u64(value);
            else if (key == "workers") spec.workers = static_cast<unsigned long>(as_u64(value));
            else if (key == "condition") spec.condition = value;
            else if (key == "henselian_level") spec.henselian_level = static_cast<unsigned long>(as_u64(value));
            else if (key == "threshold") spec.threshold = value;
            else if (key == "lambda") spec.lambda = std::stod(value);
            else throw std::invalid_argument("unknown key '" + key + "'");
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": " + e.what());
        } catch (const std::out_of_range&) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": value out of range");
        }
    }
}

CoeffDistribution build_distribution(const SimulateSpec& spec, const Prime& p) {
    if (spec.kind == "finite") {
        if (spec.values.empty())
            throw std::invalid_argument("finite kind needs 'values' (comma-separated integers)");
        std::vector<mpz_class> values;
        for (const std::string& v : split_list(spec.values, ',')) values.push_back(parse_mpz(v));
        if (spec.weights.empty()) return CoeffDistribution::uniform_on(p, std::move(values));
        std::vector<Rational> weights;
        for (const std::string& w : split_list(spec.weights, ',')) weights.push_back(parse_rational(w));
        return CoeffDistribution::finite_support(p, std::move(values), std::move(weights));
    }
    const unsigned long precision =
        spec.precision != 0 ? spec.precision : 2 * spec.henselian_level - 1;
    if (spec.kind == "haar") return CoeffDistribution::haar(p, precision);
    if (spec.kind == "haar_multiple_of_p") return CoeffDistribution::haar_multiple_of_p(p, precision);
    if (spec.kind == "upsilon") {
        if (spec.level == 0) throw std::invalid_argument("upsilon kind needs 'level' >= 1");
        return CoeffDistribution::upsilon(p, spec.level);
    }
    throw std::invalid_argument("unknown distribution kind '" + spec.kind + "'");
}

ExperimentConfig build_experiment(const SimulateSpec& spec, const Prime& p) {
    ExperimentConfig cfg{build_distribution(spec, p)};
    cfg.degree = spec.degree;
    cfg.d = spec.d;
    cfg.sample_count = spec.samples;
    cfg.seed = spec.seed;
    cfg.worker_count = spec.workers != 0 ? spec.workers : workers_from_env(1);
    cfg.henselian_level = spec.henselian_level;
    if (spec.condition == "none") cfg.condition = Condition::none;
    else if (spec.condition == "unit_constant_term") cfg.condition = Condition::unit_constant_term;
    else throw std::invalid_argument("unknown condition '" + spec.condition + "'");
    return cfg;
}

int run_count(std::uint64_t prime, const std::vector<std::string>& coeff_text,
              const std::string& out_path) {
    if (prime > kMaxCountingPrime)
        throw std::invalid_argument("prime too large for dense per-residue counting (max 2^20)");
    const Prime p(prime);
    std::vector<mpz_class> coeffs;
    coeffs.reserve(coeff_text.size());
    for (const std::string& c : coeff_text) coeffs.push_back(parse_mpz(c));
    const IntPolynomial f{coeffs};
    const RootCount rc = count_roots_zp(f, p);

    Json params;
    Json coeff_json = Json::array();
    for (const mpz_class& c : coeffs) coeff_json.push_back(c.get_str());
    params["coefficients"] = std::move(coeff_json);
    params["degree"] = f.degree();
    Json result;
    result["total"] = rc.total;
    result["per_residue"] = rc.per_residue;
    const Json envelope =
        cli_envelope("count", Json(prime), std::move(params), std::move(result), Json(nullptr));
    emit(envelope.dump(2) + "\n", out_path);
    return kExitOk;
}

int run_moments(std::uint64_t prime, unsigned long d_max, const std::string& format,
                const std::string& out_path) {
    const Prime p(prime);
    MomentTable table(p);
    if (format == "csv") {
        emit(moment_table_csv(table, d_max), out_path);
        return kExitOk;
    }
    Json params;
    params["d_max"] = d_max;
    params["format"] = format;
    const Json envelope = cli_envelope("moments", Json(prime), std::move(params),
                                       moments_json(table, d_max), Json(nullptr));
    emit(envelope.dump(2) + "\n", out_path);
    return kExitOk;
}

int run_simulate(const SimulateSpec& spec, const std::string& out_path) {
    if (spec.prime == 0) throw std::invalid_argument("config needs 'prime'");
    const Prime p(spec.prime);
    ExperimentConfig cfg = build_experiment(spec, p);
    MomentTable table(p);
    Json envelope;

    if (spec.mode == "tail") {
        ThresholdKind kind;
        if (spec.threshold == "log_n") kind = ThresholdKind::log_n;
        else if (spec.threshold == "power") kind = ThresholdKind::power;
        else throw std::invalid_argument("unknown threshold '" + spec.threshold + "'");
        const TailReport rep = tail_probability(cfg, kind, spec.lambda);
        Json params = experiment_params_json(cfg);
        params["mode"] = spec.mode;
        params["threshold"] = spec.threshold;
        if (kind == ThresholdKind::power) params["lambda"] = spec.lambda;
        envelope = cli_envelope("simulate", Json(spec.prime), std::move(params), tail_json(rep),
                                Json(rep.seed));
    } else {
        EstimateReport rep;
        if (spec.mode == "estimate") {
            // The positivity assumption is gated wherever it is defined for
            // the model; the theorem wrappers below gate it themselves.
            if (tau_value(cfg.distribution)) tau_diagnostic(cfg.distribution);
            rep = estimate_zd(cfg);
        } else if (spec.mode == "main") {
            cfg.condition = Condition::unit_constant_term; // wrapper conditions; keep params honest
            rep = verify_main_theorem(cfg, table);
        } else if (spec.mode == "nonunit") {
            cfg.condition = Condition::none;
            rep = verify_nonunit_theorem(cfg, table);
        } else if (spec.mode == "scaled") {
            cfg.condition = Condition::none;
            rep = verify_scaled_haar(cfg, table);
        } else if (spec.mode == "upsilon") {
            cfg.condition = Condition::none;
            rep = verify_upsilon(cfg, table);
        } else {
            throw std::invalid_argument("unknown mode '" + spec.mode + "'");
        }
        envelope = simulate_envelope(spec.mode, cfg, rep);
    }
    emit(envelope.dump(2) + "\n", out_path);
    return kExitOk; // reporting, not judging: z-scores never change the exit code
}

int run_verify(const std::string& suite_name, std::uint64_t seed, unsigned long workers,
               const std::string& out_path) {
    CriterionSuite suite;
    if (suite_name == "exact") suite = CriterionSuite::exact;
    else if (suite_name == "stochastic") suite = CriterionSuite::stochastic;
    else suite = CriterionSuite::all;

    Json lines = Json::array();
    const auto results = run_acceptance(suite, seed, workers, [&](const CriterionResult& r) {
        const Json line = criterion_result_json(r);
        std::cout << line.dump() << "\n" << std::flush;
        lines.push_back(line);
    });
    std::uint64_t failed = 0;
    for (const CriterionResult& r : results) failed += r.passed ? 0 : 1;

    Json params;
    params["suite"] = suite_name;
    params["worker_count"] = workers;
    Json result;
    result["criteria"] = std::move(lines);
    result["passed_count"] = results.size() - failed;
    result["failed_count"] = failed;
    result["all_passed"] = failed == 0;
    const Json envelope =
        cli_envelope("verify", Json(nullptr), std::move(params), std::move(result), Json(seed));
    std::cout << envelope.dump() << "\n";
    if (!out_path.empty()) emit(envelope.dump(2) + "\n", out_path);
    return failed == 0 ? kExitOk : kExitVerifyFailed;
}

int run_oracle(const std::string& kind, std::uint64_t prime, unsigned long m, unsigned long n,
               unsigned long d, unsigned long k, unsigned long precision,
               const std::vector<std::string>& residue_text, const std::string& out_path) {
    const Prime p(prime);
    Json params;
    Json result;

    if (kind == "no-root") {
        if (std::pow(static_cast<double>(prime), static_cast<double>(m)) > kMaxOracleEnumeration)
            throw std::invalid_argument("p^m too large to enumerate");
        const mpz_class brute = no_root_poly_count_brute(m, p);
        const mpz_class recur = no_root_poly_count(m, p);
        params["m"] = m;
        result["enumeration"] = brute.get_str();
        result["recurrence"] = recur.get_str();
        result["match"] = brute == recur;
    } else if (kind == "henselian") {
        if (k == 0) throw std::invalid_argument("henselian oracle needs -k >= 1");
        if (residue_text.empty()) throw std::invalid_argument("henselian oracle needs residues");
        const unsigned long K = precision != 0 ? precision : 2 * k - 1;
        if (std::pow(static_cast<double>(prime), static_cast<double>(2 * k - 1)) > kMaxOracleEnumeration)
            throw std::invalid_argument("p^(2k-1) too large to enumerate");
        std::vector<mpz_class> residues;
        for (const std::string& r : residue_text) residues.push_back(parse_mpz(r));
        const PAdicApproxPolynomial g(p, K, residues,
                                      static_cast<unsigned long>(residues.size() - 1));
        const HenselianReport brute = henselian_enumerate(g, k);
        const HenselianReport dfs = count_henselian_roots(g, k);
        params["k"] = k;
        params["precision"] = K;
        Json coeff_json = Json::array();
        for (const mpz_class& r : residues) coeff_json.push_back(r.get_str());
        params["residues"] = std::move(coeff_json);
        result["enumeration"] = Json{{"count", brute.henselian_count}, {"all_simple", brute.all_simple}};
        result["digit_dfs"] = Json{{"count", dfs.henselian_count}, {"all_simple", dfs.all_simple}};
        result["match"] =
            brute.henselian_count == dfs.henselian_count && brute.all_simple == dfs.all_simple;
    } else if (kind == "alpha-direct") {
        MomentTable table(p);
        const Rational direct = alpha_direct_oracle(table, n, d); // guards p^n size itself
        const Rational recur = table.alpha(n, d);
        params["n"] = n;
        params["d"] = d;
        result["direct"] = rational_json(direct);
        result["recurrence"] = rational_json(recur);
        result["match"] = direct == recur;
    } else {
        throw std::invalid_argument("unknown oracle '" + kind + "'");
    }

    params["oracle"] = kind;
    const Json envelope =
        cli_envelope("oracle", Json(prime), std::move(params), std::move(result), Json(nullptr));
    emit(envelope.dump(2) + "\n", out_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact root counting, factorial-moment tables, and Monte Carlo "
                 "verification for random polynomials over the p-adic integers"};
    app.require_subcommand(1);

    // count
    auto* count_cmd = app.add_subcommand(
        "count", "count the distinct p-adic integer roots of an integer polynomial");
    std::uint64_t count_prime = 0;
    std::vector<std::string> count_coeffs;
    std::string count_out;
    count_cmd->add_option("-p,--prime", count_prime, "prime p")->required();
    count_cmd
        ->add_option("coefficients", count_coeffs,
                     "integer coefficients, constant term first (put them after --)")
        ->required();
    count_cmd->add_option("--out", count_out, "write the report to this file instead of stdout");

    // moments
    auto* moments_cmd =
        app.add_subcommand("moments", "exact stable factorial-moment table alpha, beta, gamma");
    std::uint64_t moments_prime = 0;
    unsigned long moments_dmax = 0;
    std::string moments_format = "json";
    std::string moments_out;
    moments_cmd->add_option("-p,--prime", moments_prime, "prime p")->required();
    moments_cmd->add_option("-d,--d-max", moments_dmax, "largest moment order d")->required();
    moments_cmd->add_option("--format", moments_format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    moments_cmd->add_option("--out", moments_out, "write the table to this file instead of stdout");

    // simulate
    auto* simulate_cmd = app.add_subcommand(
        "simulate", "run one seeded Monte Carlo experiment described by a config file");
    std::string simulate_config;
    std::string simulate_out;
    SimulateSpec flag_spec; // flag values land here, then override the file
    simulate_cmd->add_option("config", simulate_config, "flat key = value config file")
        ->required()
        ->check(CLI::ExistingFile);
    simulate_cmd->add_option("--mode", flag_spec.mode,
                             "estimate, main, nonunit, scaled, upsilon, or tail");
    simulate_cmd->add_option("-p,--prime", flag_spec.prime, "prime p");
    simulate_cmd->add_option("--kind", flag_spec.kind,
                             "coefficient model: finite, haar, haar_multiple_of_p, upsilon");
    simulate_cmd->add_option("--values", flag_spec.values, "finite support, comma-separated integers");
    simulate_cmd->add_option("--weights", flag_spec.weights,
                             "finite-support masses, comma-separated rationals");
    simulate_cmd->add_option("--precision", flag_spec.precision, "residue digits for haar kinds");
    simulate_cmd->add_option("--level", flag_spec.level, "upsilon level k");
    simulate_cmd->add_option("--degree", flag_spec.degree, "polynomial degree n");
    simulate_cmd->add_option("-d,--d", flag_spec.d, "factorial-moment order d");
    simulate_cmd->add_option("--samples", flag_spec.samples, "accepted-sample count");
    simulate_cmd->add_option("--seed", flag_spec.seed, "RNG seed");
    simulate_cmd->add_option("--workers", flag_spec.workers, "worker threads (PADIC_WORKERS default)");
    simulate_cmd->add_option("--condition", flag_spec.condition, "none or unit_constant_term");
    simulate_cmd->add_option("--henselian-level", flag_spec.henselian_level,
                             "certification level for finite-precision models");
    simulate_cmd->add_option("--threshold", flag_spec.threshold, "tail threshold: log_n or power");
    simulate_cmd->add_option("--lambda", flag_spec.lambda, "tail power-threshold exponent");
    simulate_cmd->add_option("--out", simulate_out, "write the report to this file instead of stdout");

    // verify
    auto* verify_cmd =
        app.add_subcommand("verify", "run the numbered verification criteria and report pass/fail");
    std::string verify_suite = "all";
    std::uint64_t verify_seed = 42;
    unsigned long verify_workers = 0;
    std::string verify_out;
    verify_cmd->add_option("suite", verify_suite, "criteria subset")
        ->check(CLI::IsMember({"exact", "stochastic", "all"}));
    verify_cmd->add_option("--seed", verify_seed, "RNG seed for the stochastic criteria");
    verify_cmd->add_option("--workers", verify_workers, "worker threads (PADIC_WORKERS default)");
    verify_cmd->add_option("--out", verify_out, "also write the summary report to this file");

    // oracle
    auto* oracle_cmd = app.add_subcommand(
        "oracle", "brute-force cross-checks: no-root, henselian, alpha-direct");
    std::string oracle_kind;
    std::uint64_t oracle_prime = 0;
    unsigned long oracle_m = 0;
    unsigned long oracle_n = 0;
    unsigned long oracle_d = 0;
    unsigned long oracle_k = 0;
    unsigned long oracle_precision = 0;
    std::vector<std::string> oracle_residues;
    std::string oracle_out;
    oracle_cmd->add_option("kind", oracle_kind, "which oracle to run")
        ->required()
        ->check(CLI::IsMember({"no-root", "henselian", "alpha-direct"}));
    oracle_cmd->add_option("-p,--prime", oracle_prime, "prime p")->required();
    oracle_cmd->add_option("-m,--m", oracle_m, "degree bound for no-root");
    oracle_cmd->add_option("-n,--n", oracle_n, "degree for alpha-direct");
    oracle_cmd->add_option("-d,--d", oracle_d, "moment order for alpha-direct");
    oracle_cmd->add_option("-k,--k", oracle_k, "Henselian level");
    oracle_cmd->add_option("--precision", oracle_precision, "residue digits (default 2k-1)");
    oracle_cmd->add_option("residues", oracle_residues,
                           "polynomial residues, constant term first (after --)");
    oracle_cmd->add_option("--out", oracle_out, "write the report to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(count_cmd))
            return run_count(count_prime, count_coeffs, count_out);
        if (app.got_subcommand(moments_cmd))
            return run_moments(moments_prime, moments_dmax, moments_format, moments_out);
        if (app.got_subcommand(simulate_cmd)) {
            SimulateSpec spec;
            load_simulate_ini(simulate_config, spec);
            // Flags override the file wherever they were actually given.
            if (simulate_cmd->count("--mode")) spec.mode = flag_spec.mode;
            if (simulate_cmd->count("--prime")) spec.prime = flag_spec.prime;
            if (simulate_cmd->count("--kind")) spec.kind = flag_spec.kind;
            if (simulate_cmd->count("--values")) spec.values = flag_spec.values;
            if (simulate_cmd->count("--weights")) spec.weights = flag_spec.weights;
            if (simulate_cmd->count("--precision")) spec.precision = flag_spec.precision;
            if (simulate_cmd->count("--level")) spec.level = flag_spec.level;
            if (simulate_cmd->count("--degree")) spec.degree = flag_spec.degree;
            if (simulate_cmd->count("--d")) spec.d = flag_spec.d;
            if (simulate_cmd->count("--samples")) spec.samples = flag_spec.samples;
            if (simulate_cmd->count("--seed")) spec.seed = flag_spec.seed;
            if (simulate_cmd->count("--workers")) spec.workers = flag_spec.workers;
            if (simulate_cmd->count("--condition")) spec.condition = flag_spec.condition;
            if (simulate_cmd->count("--henselian-level"))
                spec.henselian_level = flag_spec.henselian_level;
            if (simulate_cmd->count("--threshold")) spec.threshold = flag_spec.threshold;
            if (simulate_cmd->count("--lambda")) spec.lambda = flag_spec.lambda;
            return run_simulate(spec, simulate_out);
        }
        if (app.got_subcommand(verify_cmd)) {
            const unsigned long workers =
                verify_workers != 0 ? verify_workers : workers_from_env(4);
            return run_verify(verify_suite, verify_seed, workers, verify_out);
        }
        if (app.got_subcommand(oracle_cmd))
            return run_oracle(oracle_kind, oracle_prime, oracle_m, oracle_n, oracle_d, oracle_k,
                              oracle_precision, oracle_residues, oracle_out);
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const AssumptionError& e) {
        std::cerr << "model assumption violated: " << e.what() << "\n";
        return kExitAssumption;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
}
