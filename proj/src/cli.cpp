#include "nlcseq/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "nlcseq/bounds.hpp"
#include "nlcseq/hermitian.hpp"
#include "nlcseq/io.hpp"
#include "nlcseq/parallel.hpp"
#include "nlcseq/rational.hpp"

namespace nlcseq {

namespace {

struct CliConfig {
    std::string construction;
    unsigned q = 0;
    int p = 0, k = 0;
    unsigned d = 0, N = 0, M = 0;
    std::string n_spec, r_spec = "1,2", m_spec = "1", rotate_spec;
    std::uint64_t budget = kDefaultMonomialBudget;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string format = "csv";
    std::string output, input;
    unsigned trials = 100;
    bool timing = true;
    bool allow_small_q = false;
};

// "2,5,9-12" -> {2,5,9,10,11,12}; both "a-b" and "a..b" denote inclusive
// ranges. Order and duplicates are preserved as written.
std::vector<unsigned> parse_list(const std::string& spec, const char* what) {
    std::vector<unsigned> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        unsigned long lo = 0, hi = 0;
        std::size_t dash = tok.find("..");
        std::size_t skip = 2;
        if (dash == std::string::npos) {
            dash = tok.find('-', 1);
            skip = 1;
        }
        try {
            if (dash == std::string::npos) {
                lo = hi = std::stoul(tok);
            } else {
                lo = std::stoul(tok.substr(0, dash));
                hi = std::stoul(tok.substr(dash + skip));
            }
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("bad ") + what + " list entry '" +
                                        tok + "'");
        }
        if (hi < lo)
            throw std::invalid_argument(std::string("descending ") + what +
                                        " range '" + tok + "'");
        for (unsigned long v = lo; v <= hi; ++v)
            out.push_back(static_cast<unsigned>(v));
    }
    if (out.empty())
        throw std::invalid_argument(std::string("empty ") + what + " list");
    return out;
}

// (p, e) with q = p^e, or throws.
std::pair<int, int> factor_prime_power(unsigned q, const char* what) {
    if (q >= 2) {
        unsigned p = q;
        for (unsigned f = 2; f * f <= q; ++f)
            if (q % f == 0) {
                p = f;
                break;
            }
        unsigned rest = q;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (rest == 1) return {static_cast<int>(p), e};
    }
    throw std::invalid_argument(std::string(what) + " = " + std::to_string(q) +
                                " is not a prime power");
}

FieldCtxPtr resolve_plain_field(const CliConfig& cfg) {
    if (cfg.p > 0 || cfg.k > 0) {
        if (cfg.p <= 0 || cfg.k <= 0)
            throw std::invalid_argument("give both --p and --k, or --q alone");
        auto ctx = make_field(cfg.p, cfg.k);
        if (cfg.q && ctx->q() != cfg.q)
            throw std::invalid_argument("--q disagrees with p^k");
        return ctx;
    }
    if (!cfg.q) throw std::invalid_argument("a field is required: --q or --p/--k");
    const auto [p, e] = factor_prime_power(cfg.q, "q");
    return make_field(p, e);
}

// For the Hermitian constructions --q is the curve parameter and the
// coordinate field is its square.
std::pair<FieldCtxPtr, unsigned> resolve_curve_field(const CliConfig& cfg) {
    unsigned curve_q = cfg.q;
    if (!curve_q) {
        if (cfg.p <= 0 || cfg.k <= 0 || cfg.k % 2 != 0)
            throw std::invalid_argument(
                "hermitian constructions need --q, or --p with even --k");
        curve_q = 1;
        for (int i = 0; i < cfg.k / 2; ++i) curve_q *= cfg.p;
    }
    const auto [p, e] = factor_prime_power(curve_q, "q");
    auto ctx = make_field(p, 2 * e);
    return {std::move(ctx), curve_q};
}

Multisequence build_multisequence(const CliConfig& cfg) {
    if (!cfg.input.empty() || cfg.construction == "file") {
        if (cfg.input.empty())
            throw std::invalid_argument("construction 'file' needs --input");
        return read_multisequence_file(cfg.input);
    }
    if (cfg.construction == "rational") {
        auto ctx = resolve_plain_field(cfg);
        std::vector<unsigned> rotate;
        if (!cfg.rotate_spec.empty()) {
            for (unsigned v : parse_list(cfg.rotate_spec, "rotate"))
                rotate.push_back(v);
        }
        return generate_rational(
            plan_rational(std::move(ctx), cfg.d, cfg.N, cfg.M, std::move(rotate)));
    }
    if (cfg.construction == "hermitian-sigma" ||
        cfg.construction == "hermitian-phi") {
        auto [ctx, curve_q] = resolve_curve_field(cfg);
        const auto curve = enumerate_points(std::move(ctx), curve_q);
        const auto mode = cfg.construction == "hermitian-sigma" ? HermMode::Sigma
                                                                : HermMode::Phi;
        return generate_hermitian(
            plan_hermitian(curve, mode, cfg.N, cfg.M, cfg.allow_small_q));
    }
    throw std::invalid_argument("unknown construction '" + cfg.construction +
                                "' (rational, hermitian-sigma, hermitian-phi, file)");
}

void write_text_output(const std::string& path,
                       const std::function<void(std::ostream&)>& writer) {
    if (path.empty() || path == "-") {
        writer(std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    writer(os);
    if (!os) throw std::runtime_error("write failed: " + path);
}

unsigned block_length_of(const Provenance& pv) {
    if (pv.construction == "rational") return pv.d;
    if (pv.construction == "hermitian-sigma") return pv.curve_q * pv.curve_q - 1;
    if (pv.construction == "hermitian-phi") return static_cast<unsigned>(pv.p);
    return 0;
}

std::vector<unsigned> default_n_list(unsigned len) {
    if (len < 2) throw std::invalid_argument("sequences too short to sweep");
    std::vector<unsigned> out;
    for (unsigned n = 2; n <= len; ++n) out.push_back(n);
    return out;
}

int cmd_generate(const CliConfig& cfg) {
    const Multisequence S = build_multisequence(cfg);
    write_text_output(cfg.output, [&](std::ostream& os) {
        write_multisequence(os, S);
    });
    return 0;
}

int cmd_complexity(const CliConfig& cfg) {
    const Multisequence S = build_multisequence(cfg);
    const auto n_list = cfg.n_spec.empty() ? default_n_list(S.length())
                                           : parse_list(cfg.n_spec, "n");
    const auto r_list = parse_list(cfg.r_spec, "r");
    for (unsigned n : n_list)
        if (n < 1 || n > S.length())
            throw std::invalid_argument("n = " + std::to_string(n) +
                                        " outside [1, length]");

    SweepReport report;
    report.rows.resize(n_list.size() * r_list.size());
    const unsigned q_col = S.prov.curve_q ? S.prov.curve_q : S.prov.q;
    parallel_for_index(report.rows.size(), cfg.workers, [&](std::size_t cell) {
        SweepRow row;
        row.construction = S.prov.construction;
        row.q = q_col;
        row.d_or_p = block_length_of(S.prov);
        row.N = S.prov.N;
        row.M = S.prov.M;
        row.n = n_list[cell / r_list.size()];
        row.r = r_list[cell % r_list.size()];
        const auto t0 = std::chrono::steady_clock::now();
        row.result = joint_nonlinear_complexity(S, row.n, row.r, cfg.budget);
        const auto t1 = std::chrono::steady_clock::now();
        row.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
        report.rows[cell] = std::move(row);
    });

    write_text_output(cfg.output, [&](std::ostream& os) {
        if (cfg.format == "json")
            write_report_json(os, report, cfg.timing);
        else
            write_report_csv(os, report, cfg.timing);
    });
    return 0;
}

int cmd_verify(const CliConfig& cfg) {
    const Multisequence S = build_multisequence(cfg);
    const BoundSpec spec = bound_spec_for(S.prov);
    const unsigned sweep_max = std::min(spec.n_max, S.length());
    std::vector<unsigned> n_list;
    if (cfg.n_spec.empty()) {
        for (unsigned n = 2; n <= sweep_max; ++n) n_list.push_back(n);
    } else {
        n_list = parse_list(cfg.n_spec, "n");
    }
    const auto r_list = parse_list(cfg.r_spec, "r");

    const SweepReport report =
        verify_sweep(S, spec, n_list, r_list, cfg.budget, cfg.workers);
    write_text_output(cfg.output, [&](std::ostream& os) {
        if (cfg.format == "json")
            write_report_json(os, report, cfg.timing);
        else
            write_report_csv(os, report, cfg.timing);
    });
    const bool ok = report.all_exact_satisfied();
    if (!ok) std::cerr << "verify: bound violation detected\n";
    return ok ? 0 : 1;
}

int cmd_baseline(const CliConfig& cfg) {
    const auto ctx = resolve_plain_field(cfg);
    const auto m_list = parse_list(cfg.m_spec, "m");
    const auto n_list = cfg.n_spec.empty() ? std::vector<unsigned>{64}
                                           : parse_list(cfg.n_spec, "n");
    const auto r_list = parse_list(cfg.r_spec, "r");
    std::vector<BaselineStats> rows;
    for (unsigned m : m_list)
        for (unsigned n : n_list)
            for (unsigned r : r_list)
                rows.push_back(random_baseline(ctx, m, n, r, cfg.trials, cfg.seed,
                                               cfg.budget));
    write_text_output(cfg.output, [&](std::ostream& os) {
        if (cfg.format == "json")
            write_baseline_json(os, rows);
        else
            write_baseline_csv(os, rows);
    });
    return 0;
}

// key=value lines, '#' comments. Values feed option defaults; explicit
// command-line flags still win.
std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

// One flag name can map to several Option objects (one per subcommand); only
// the parsed subcommand's copy can have a nonzero count.
using OptionIndex = std::map<std::string, std::vector<CLI::Option*>>;

void apply_config_map(const std::map<std::string, std::string>& kv,
                      CliConfig& cfg, const OptionIndex& opts) {
    auto given = [&](const std::string& name) {
        const auto it = opts.find(name);
        if (it == opts.end()) return false;
        for (const CLI::Option* o : it->second)
            if (o->count() > 0) return true;
        return false;
    };
    auto to_u = [](const std::string& k, const std::string& v) {
        try {
            return std::stoull(v);
        } catch (const std::exception&) {
            throw std::invalid_argument("config key '" + k + "': bad number '" + v +
                                        "'");
        }
    };
    for (const auto& [key, val] : kv) {
        if (given(key)) continue;
        if (key == "construction") cfg.construction = val;
        else if (key == "q") cfg.q = static_cast<unsigned>(to_u(key, val));
        else if (key == "p") cfg.p = static_cast<int>(to_u(key, val));
        else if (key == "k") cfg.k = static_cast<int>(to_u(key, val));
        else if (key == "d") cfg.d = static_cast<unsigned>(to_u(key, val));
        else if (key == "N") cfg.N = static_cast<unsigned>(to_u(key, val));
        else if (key == "M") cfg.M = static_cast<unsigned>(to_u(key, val));
        else if (key == "n") cfg.n_spec = val;
        else if (key == "r") cfg.r_spec = val;
        else if (key == "m") cfg.m_spec = val;
        else if (key == "rotate") cfg.rotate_spec = val;
        else if (key == "budget") cfg.budget = to_u(key, val);
        else if (key == "seed") cfg.seed = to_u(key, val);
        else if (key == "workers") cfg.workers = static_cast<unsigned>(to_u(key, val));
        else if (key == "format") cfg.format = val;
        else if (key == "output") cfg.output = val;
        else if (key == "input") cfg.input = val;
        else if (key == "trials") cfg.trials = static_cast<unsigned>(to_u(key, val));
        else if (key == "timing") cfg.timing = val == "1" || val == "true";
        else if (key == "allow_small_q")
            cfg.allow_small_q = val == "1" || val == "true";
        else
            throw std::invalid_argument("config key '" + key + "' is not known");
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"orbit-generated multisequences and their joint nonlinear "
                 "complexity"};
    app.require_subcommand(1);

    CliConfig cfg;
    if (const char* env = std::getenv("NLCSEQ_BUDGET")) {
        try {
            cfg.budget = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: NLCSEQ_BUDGET is not a number: " << env << "\n";
            return 2;
        }
    }

    std::string config_path;
    OptionIndex opts;

    auto add_common = [&](CLI::App* sub, bool with_lists) {
        sub->add_option("--config", config_path, "key=value config file");
        opts["q"].push_back(
            sub->add_option("--q", cfg.q, "field size, or curve parameter"));
        opts["p"].push_back(sub->add_option("--p", cfg.p, "characteristic"));
        opts["k"].push_back(sub->add_option("--k", cfg.k, "extension degree"));
        if (with_lists) {
            opts["n"].push_back(sub->add_option(
                "--n-list,--n", cfg.n_spec, "prefix lengths, e.g. 2-24 or 2,4,8"));
            opts["r"].push_back(sub->add_option("--r-list,--r", cfg.r_spec,
                                                "degree caps, e.g. 1,2"));
            opts["budget"].push_back(
                sub->add_option("--budget", cfg.budget, "monomial budget cap"));
            opts["workers"].push_back(sub->add_option(
                "--workers", cfg.workers, "worker threads (0 = hardware)"));
            opts["format"].push_back(
                sub->add_option("--format", cfg.format, "csv or json")
                    ->check(CLI::IsMember({"csv", "json"})));
            opts["timing"].push_back(
                sub->add_flag("--timing,!--no-timing", cfg.timing,
                              "include wall times in reports"));
        }
        opts["output"].push_back(sub->add_option("--output,-o", cfg.output,
                                                 "output path (default stdout)"));
    };

    auto add_construction = [&](CLI::App* sub) {
        opts["construction"].push_back(
            sub->add_option("--construction", cfg.construction,
                            "rational | hermitian-sigma | hermitian-phi | file"));
        opts["d"].push_back(
            sub->add_option("--d", cfg.d, "orbit length (rational)"));
        opts["N"].push_back(sub->add_option("--N", cfg.N, "number of sequences"));
        opts["M"].push_back(sub->add_option("--M", cfg.M, "blocks per sequence"));
        opts["rotate"].push_back(sub->add_option(
            "--rotate", cfg.rotate_spec, "per-cell start shifts (rational)"));
        opts["allow_small_q"].push_back(
            sub->add_flag("--allow-small-q", cfg.allow_small_q,
                          "permit sigma below q = 5 (no bound applies)"));
        opts["input"].push_back(sub->add_option(
            "--input,-i", cfg.input, "read a multisequence file instead"));
    };

    CLI::App* gen = app.add_subcommand("generate", "emit a multisequence file");
    add_common(gen, false);
    add_construction(gen);

    CLI::App* cpx = app.add_subcommand(
        "complexity", "exact joint nonlinear complexity profile");
    add_common(cpx, true);
    add_construction(cpx);

    CLI::App* ver = app.add_subcommand(
        "verify", "check complexity against the construction's bound");
    add_common(ver, true);
    add_construction(ver);

    CLI::App* base =
        app.add_subcommand("baseline", "random-multisequence reference stats");
    add_common(base, true);
    opts["m"].push_back(
        base->add_option("--m,--m-list", cfg.m_spec, "rows per trial"));
    opts["trials"].push_back(
        base->add_option("--trials", cfg.trials, "Monte Carlo trials"));
    opts["seed"].push_back(base->add_option("--seed", cfg.seed, "master RNG seed"));

    std::vector<std::string> argv_vec(args.rbegin(), args.rend());
    try {
        app.parse(argv_vec);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty())
            apply_config_map(load_config_file(config_path), cfg, opts);
        if (gen->parsed()) return cmd_generate(cfg);
        if (cpx->parsed()) return cmd_complexity(cfg);
        if (ver->parsed()) return cmd_verify(cfg);
        if (base->parsed()) return cmd_baseline(cfg);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace nlcseq
