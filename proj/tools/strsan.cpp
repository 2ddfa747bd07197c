// Command-line front end: sanitize, gen, verify and a hidden oracle command.

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "strsan/eval.hpp"
#include "strsan/oracles.hpp"
#include "strsan/pipeline.hpp"
#include "strsan/tfs.hpp"
#include "strsan/etfs.hpp"

namespace {

using namespace strsan;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInput = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write \"" + path + "\"");
    out << text;
}

std::string render(const Alphabet& a, TokenSpan s) { return a.decode(s) + "\n"; }

InputMode parse_mode(const std::string& m) {
    if (m == "char") return InputMode::Char;
    if (m == "token") return InputMode::Token;
    throw InputError("unknown mode \"" + m + "\"");
}

struct CommonArgs {
    std::string in, patterns, mode = "char";
    std::size_t k = 0;
    bool positions = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--in", in, "String file")->required();
        cmd->add_option("--patterns", patterns, "Sensitive patterns (one per line) or positions")->required();
        cmd->add_option("--k", k, "Pattern length")->required();
        cmd->add_option("--mode", mode, "char | token")->check(CLI::IsMember({"char", "token"}));
        cmd->add_flag("--positions", positions, "Sensitive file lists 0-based positions");
    }

    LoadedInput load(RunConfig& cfg) const {
        cfg.k = k;
        cfg.mode = parse_mode(mode);
        cfg.positions = positions;
        LoadedInput li = parse_inputs(read_file(in), read_file(patterns), cfg);
        for (const auto& w : li.warnings) std::cerr << "warning: " << w << '\n';
        return li;
    }
};

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::out_of_range& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerifyFailed;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"String sanitization toolkit"};
    app.require_subcommand(1);
    int status = kExitOk;

    // sanitize
    auto* san = app.add_subcommand("sanitize", "Sanitize a string");
    CommonArgs san_args;
    san_args.attach(san);
    std::string pipeline = "tpm", theta = "auto", cost_model = "uniform", out_path, report_path;
    std::uint64_t tau = 1;
    std::optional<double> rho;
    bool no_timings = false;
    san->add_option("--pipeline", pipeline, "tpm | tm | tmi | etfs | ba | tfs | pfs")
        ->check(CLI::IsMember({"tpm", "tm", "tmi", "etfs", "ba", "tfs", "pfs"}));
    san->add_option("--tau", tau, "Frequency threshold")->check(CLI::PositiveNumber);
    san->add_option("--theta", theta, "Replacement weight capacity, or auto");
    san->add_option("--rho", rho, "Implausibility threshold (non-positive)");
    san->add_option("--cost-model", cost_model, "uniform, or a cost table file");
    san->add_option("--out", out_path, "Output file (default stdout)");
    san->add_option("--report", report_path, "Metrics report file");
    san->add_flag("--no-timings", no_timings, "Omit timings from the report");
    san->callback([&] {
        status = guarded([&] {
            RunConfig cfg;
            cfg.pipeline = *parse_pipeline(pipeline);
            cfg.tau = tau;
            cfg.rho = rho;
            cfg.timings = !no_timings;
            if (theta != "auto") {
                std::int64_t t = 0;
                auto [p, ec] = std::from_chars(theta.data(), theta.data() + theta.size(), t);
                if (ec != std::errc() || p != theta.data() + theta.size() || t < 0)
                    throw InputError("theta must be a non-negative integer or auto");
                cfg.theta = t;
            }
            if (cfg.pipeline == Pipeline::Tmi && !cfg.rho) throw InputError("pipeline tmi requires --rho");
            LoadedInput li = san_args.load(cfg);
            CostModel cm = cost_model == "uniform" ? CostModel::uniform(tau)
                                                   : load_cost_model(read_file(cost_model), li.alphabet, tau);
            RunResult r = run_pipeline(li, cfg, cm);
            write_text(out_path, render(li.alphabet, r.output));
            if (!report_path.empty()) write_text(report_path, format_report(r, li.alphabet, cfg.timings));
            return kExitOk;
        });
    });

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a uniform random string");
    std::size_t gen_n = 0, gen_sigma = 0, gen_k = 0, gen_count = 0;
    std::uint64_t gen_seed = 1, gen_min_freq = 1;
    std::string gen_out, gen_patterns_out;
    gen->add_option("--n", gen_n, "Length")->required();
    gen->add_option("--sigma", gen_sigma, "Alphabet size")->required()->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_option("--out", gen_out, "Output file (default stdout)");
    gen->add_option("--patterns-out", gen_patterns_out, "Also write sensitive patterns here");
    gen->add_option("--k", gen_k, "Pattern length for --patterns-out");
    gen->add_option("--count", gen_count, "Number of sensitive patterns");
    gen->add_option("--min-freq", gen_min_freq, "Minimum frequency of chosen patterns");
    gen->callback([&] {
        status = guarded([&] {
            Alphabet a = synthetic_alphabet(gen_sigma);
            Sequence W = generate_uniform(gen_n, gen_sigma, gen_seed);
            write_text(gen_out, render(a, W));
            if (!gen_patterns_out.empty()) {
                if (gen_k == 0) throw InputError("--patterns-out needs --k");
                std::string text;
                for (const auto& p : pick_frequent_patterns(W, gen_k, gen_count, gen_min_freq, gen_seed + 1))
                    text += a.decode(p) + "\n";
                write_text(gen_patterns_out, text);
            }
            return kExitOk;
        });
    });

    // verify
    auto* ver = app.add_subcommand("verify", "Check a sanitized string against its source");
    CommonArgs ver_args;
    ver_args.attach(ver);
    std::string candidate, levels = "C1,P1,P2,P3,P4";
    ver->add_option("--candidate", candidate, "Sanitized string file")->required();
    ver->add_option("--levels", levels, "Comma-separated subset of C1,P1,Pi1,P2,P3,P4");
    ver->callback([&] {
        status = guarded([&] {
            RunConfig cfg;
            LoadedInput li = ver_args.load(cfg);
            Sequence T = li.alphabet.encode(read_file(candidate), true);
            bool all = true;
            std::stringstream ls(levels);
            for (std::string name; std::getline(ls, name, ',');) {
                auto lvl = parse_level(name);
                if (!lvl) throw InputError("unknown level \"" + name + "\"");
                VerifyResult v = verify(T, li.inst, *lvl);
                std::cout << level_name(*lvl) << ' ' << (v.ok ? "PASS" : "FAIL");
                if (!v.ok) {
                    std::cout << ' ' << v.message;
                    if (v.pattern) std::cout << " [" << li.alphabet.decode(*v.pattern) << ']';
                }
                std::cout << '\n';
                all = all && v.ok;
            }
            return all ? kExitOk : kExitVerifyFailed;
        });
    });

    // oracle (not listed in help)
    auto* orc = app.add_subcommand("oracle", "");
    orc->group("");
    CommonArgs orc_args;
    orc_args.attach(orc);
    std::string what = "tfs";
    orc->add_option("--what", what, "tfs | etfs")->check(CLI::IsMember({"tfs", "etfs"}));
    orc->callback([&] {
        status = guarded([&] {
            RunConfig cfg;
            LoadedInput li = orc_args.load(cfg);
            OracleBudget budget;
            budget.max_sigma = std::max<std::size_t>(budget.max_sigma, li.inst.sigma);
            OracleWitness w = what == "tfs" ? oracle_min_tfs(li.inst, budget) : oracle_min_etfs(li.inst, budget);
            std::size_t algo = what == "tfs" ? tfs_sanitize(li.inst).size() : etfs_sanitize(li.inst).distance;
            std::cout << (what == "tfs" ? "length=" : "distance=") << w.value << '\n'
                      << "witness=" << li.alphabet.decode(w.witness) << '\n'
                      << "algorithm=" << algo << '\n'
                      << "agree=" << (algo == w.value ? "yes" : "no") << '\n';
            return algo == w.value ? kExitOk : kExitVerifyFailed;
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }
    return status;
}
