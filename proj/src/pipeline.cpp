#include "strsan/pipeline.hpp"

#include <cctype>
#include <chrono>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "strsan/etfs.hpp"
#include "strsan/pfs.hpp"
#include "strsan/tfs.hpp"

namespace strsan {

std::optional<Pipeline> parse_pipeline(std::string_view name) {
    for (Pipeline p : {Pipeline::Tpm, Pipeline::Tm, Pipeline::Tmi, Pipeline::Etfs, Pipeline::Ba, Pipeline::Tfs,
                       Pipeline::Pfs})
        if (name == pipeline_name(p)) return p;
    return std::nullopt;
}

const char* pipeline_name(Pipeline p) {
    switch (p) {
        case Pipeline::Tpm: return "tpm";
        case Pipeline::Tm: return "tm";
        case Pipeline::Tmi: return "tmi";
        case Pipeline::Etfs: return "etfs";
        case Pipeline::Ba: return "ba";
        case Pipeline::Tfs: return "tfs";
        case Pipeline::Pfs: return "pfs";
    }
    return "?";
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.push_back(line);
        start = end + 1;
    }
    return out;
}

bool blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

LoadedInput parse_inputs(std::string_view text, std::string_view sensitive, const RunConfig& cfg) {
    LoadedInput out;
    out.alphabet = Alphabet::from_text(text, cfg.mode);
    Sequence W = out.alphabet.encode(text);

    if (cfg.positions) {
        std::vector<std::size_t> positions;
        for (const auto& tok : tokenize(sensitive, InputMode::Token)) {
            std::size_t p = 0;
            if (!parse_number(std::string_view(tok.text), p))
                throw ParseError("position \"" + tok.text + "\" is not a non-negative integer", tok.line, tok.column);
            positions.push_back(p);
        }
        out.inst = build_instance_from_positions(std::move(W), cfg.k, positions, out.alphabet.size());
        return out;
    }

    std::vector<Kmer> patterns;
    const auto lines = split_lines(sensitive);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        if (blank(lines[ln])) continue;
        auto toks = tokenize(lines[ln], cfg.mode);
        for (auto& t : toks) t.line = ln + 1;
        if (toks.size() != cfg.k)
            throw ParseError("pattern has " + std::to_string(toks.size()) + " tokens, expected k=" +
                                 std::to_string(cfg.k),
                             ln + 1, 1);
        Kmer p;
        bool known = true;
        for (const auto& t : toks) {
            if (t.text == kSeparatorText) throw ParseError("pattern contains the reserved separator", t.line, t.column);
            auto c = out.alphabet.code(t.text);
            if (!c) {
                known = false;
                break;
            }
            p.push_back(*c);
        }
        if (!known) {
            out.warnings.push_back("pattern on line " + std::to_string(ln + 1) +
                                   " uses tokens absent from the string and cannot occur");
            continue;
        }
        patterns.push_back(std::move(p));
    }
    out.inst = build_instance(std::move(W), cfg.k, patterns, out.alphabet.size());
    for (const auto& p : out.inst.absent)
        out.warnings.push_back("sensitive pattern \"" + out.alphabet.decode(p) + "\" does not occur in the string");
    return out;
}

CostModel load_cost_model(std::string_view table, const Alphabet& alphabet, std::uint64_t tau) {
    const std::size_t sigma = alphabet.size();
    std::vector<std::optional<std::int64_t>> weight(sigma + 1, std::int64_t{1});  // last slot: deletion
    double ghost = 1.0;
    const auto lines = split_lines(table);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string_view line = lines[ln];
        if (auto hash = line.find('#'); hash != std::string_view::npos && (hash == 0 || std::isspace(
                                                                                 static_cast<unsigned char>(line[hash - 1]))))
            line = line.substr(0, hash);
        auto toks = tokenize(line, InputMode::Token);
        if (toks.empty()) continue;
        if (toks.size() != 2) throw ParseError("expected two fields", ln + 1, toks.front().column);
        const std::string& key = toks[0].text;
        const std::string& val = toks[1].text;
        auto slot = [&](const std::string& name, std::size_t col) -> std::size_t {
            if (name == "eps") return sigma;
            auto c = alphabet.code(name);
            if (!c) throw ParseError("unknown letter \"" + name + "\"", ln + 1, col);
            return *c;
        };
        if (key == "ghost") {
            double g = 0;
            if (!parse_number(std::string_view(val), g) || g < 0)
                throw ParseError("ghost cost must be a non-negative number", ln + 1, toks[1].column);
            ghost = g;
        } else if (key == "forbid") {
            weight[slot(val, toks[1].column)] = std::nullopt;
        } else {
            std::int64_t w = 0;
            if (!parse_number(std::string_view(val), w) || w < 0)
                throw ParseError("weight must be a non-negative integer", ln + 1, toks[1].column);
            weight[slot(key, toks[0].column)] = w;
        }
    }
    CostModel cm;
    cm.tau = tau;
    cm.ghost = [ghost](std::size_t, TokenSpan) { return ghost; };
    cm.sub = [weight, sigma](std::size_t, Choice c) { return weight[c ? *c : sigma]; };
    return cm;
}

namespace {

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

}  // namespace

RunResult run_pipeline(const LoadedInput& input, const RunConfig& cfg, const CostModel& base_cm) {
    const auto& inst = input.inst;
    if (cfg.pipeline == Pipeline::Tmi && !cfg.rho) throw std::invalid_argument("pipeline tmi requires rho");
    CostModel cm = base_cm;
    cm.tau = cfg.tau;
    cm.theta = cfg.theta;

    RunResult r;
    auto& rep = r.report;
    auto field = [&](std::string key, std::string value) { r.fields.emplace_back(std::move(key), std::move(value)); };
    auto num = [](auto v) { return std::to_string(v); };

    field("pipeline", pipeline_name(cfg.pipeline));
    field("mode", cfg.mode == InputMode::Char ? "char" : "token");
    field("k", num(inst.k));
    field("tau", num(cfg.tau));
    field("n", num(inst.n()));
    field("sigma", num(inst.sigma));
    field("sensitive_patterns", num(inst.sensitive.size()));
    field("sensitive_occurrences", num(inst.S.size()));
    field("absent_patterns", num(inst.absent.size()));
    rep.lengths["W"] = inst.n();

    std::optional<SanitizedString> X;
    auto need_x = [&] {
        if (X) return;
        Stopwatch sw;
        X = tfs_sanitize(inst);
        rep.runtimes_ms["tfs"] = sw.ms();
        rep.lengths["X"] = X->size();
        field("length_X", num(X->size()));
        field("separators_X", num(X->separators()));
    };

    std::optional<KmerSet> implausible;
    if (cfg.rho && (cfg.pipeline == Pipeline::Tmi || cfg.pipeline == Pipeline::Tm || cfg.pipeline == Pipeline::Tpm)) {
        Stopwatch sw;
        implausible = implausible_set(inst.W, inst.k, inst.sigma, *cfg.rho);
        rep.runtimes_ms["implausible"] = sw.ms();
        field("rho", fmt_double(*cfg.rho));
        field("implausible_patterns", num(implausible->size()));
    }

    auto run_mcsr = [&](const Sequence& in, bool enforce) {
        Stopwatch sw;
        McsrResult m = mcsr_sanitize(in, inst, cm, enforce ? &*implausible : nullptr);
        rep.runtimes_ms["mcsr"] = sw.ms();
        field("theta", num(m.capacity));
        field("mcsr_estimated_cost", fmt_double(m.estimated_cost));
        field("mcsr_weight", num(m.weight));
        field("mcsr_resolves", num(m.resolves));
        rep.lengths["Z"] = m.Z.size();
        field("length_Z", num(m.Z.size()));
        if (implausible) {
            rep.implausible_pct = implausible_percentage(m.Z, inst.k, m.sites, *implausible);
            field("implausible_pct", fmt_double(*rep.implausible_pct));
        }
        return std::move(m.Z);
    };

    switch (cfg.pipeline) {
        case Pipeline::Tfs:
            need_x();
            r.output = X->tokens;
            break;
        case Pipeline::Pfs:
        case Pipeline::Tpm: {
            need_x();
            Stopwatch sw;
            SanitizedString Y = pfs_sanitize(inst);
            rep.runtimes_ms["pfs"] = sw.ms();
            rep.lengths["Y"] = Y.size();
            field("length_Y", num(Y.size()));
            field("separators_Y", num(Y.separators()));
            r.output = cfg.pipeline == Pipeline::Pfs ? Y.tokens : run_mcsr(Y.tokens, false);
            break;
        }
        case Pipeline::Tm:
            need_x();
            r.output = run_mcsr(X->tokens, false);
            break;
        case Pipeline::Tmi:
            need_x();
            r.output = run_mcsr(X->tokens, true);
            break;
        case Pipeline::Etfs: {
            need_x();
            Stopwatch sw;
            MatchResult m = etfs_sanitize(inst);
            rep.runtimes_ms["etfs"] = sw.ms();
            r.output = m.T;
            rep.edit_distance = m.distance;
            rep.lengths["X_ED"] = m.T.size();
            field("length_X_ED", num(m.T.size()));
            field("separators_X_ED",
                  num(static_cast<std::size_t>(std::count_if(m.T.begin(), m.T.end(), is_separator))));
            field("edit_distance", num(m.distance));
            field("edit_distance_tfs", num(edit_distance(inst.W, X->tokens)));
            field("automaton_states", num(m.stats.states));
            field("dp_cells", num(m.stats.cells));
            try {
                rep.edre = edre(inst.W, X->tokens, m.T);
                field("edre", fmt_double(*rep.edre));
            } catch (const UndefinedWhenZero&) {
                field("edre", "undefined");
            }
            break;
        }
        case Pipeline::Ba: {
            Stopwatch sw;
            r.output = ba_sanitize(inst);
            rep.runtimes_ms["ba"] = sw.ms();
            field("separators_BA",
                  num(static_cast<std::size_t>(std::count_if(r.output.begin(), r.output.end(), is_separator))));
            break;
        }
    }

    rep.lengths["output"] = r.output.size();
    field("length_output", num(r.output.size()));
    rep.distortion = distortion(inst.W, r.output, inst.k, inst.sensitive);
    auto lg = lost_ghost(inst.W, r.output, inst.k, cfg.tau, inst.sensitive);
    rep.lost = std::move(lg.lost);
    rep.ghost = std::move(lg.ghost);
    field("distortion", num(rep.distortion));
    field("lost_count", num(rep.lost.size()));
    field("ghost_count", num(rep.ghost.size()));
    return r;
}

std::string format_report(const RunResult& r, const Alphabet& alphabet, bool timings) {
    std::ostringstream os;
    for (const auto& [k, v] : r.fields) os << k << '=' << v << '\n';
    if (timings)
        for (const auto& [stage, ms] : r.report.runtimes_ms) os << "time_" << stage << "_ms=" << fmt_double(ms) << '\n';
    for (const auto& p : r.report.lost) os << "lost=" << alphabet.decode(p) << '\n';
    for (const auto& p : r.report.ghost) os << "ghost=" << alphabet.decode(p) << '\n';
    return os.str();
}

Sequence generate_uniform(std::size_t n, std::size_t sigma, std::uint64_t seed) {
    if (sigma == 0) throw std::invalid_argument("alphabet size must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Token> pick(0, static_cast<Token>(sigma - 1));
    Sequence out(n);
    for (auto& t : out) t = pick(rng);
    return out;
}

std::vector<Kmer> pick_frequent_patterns(TokenSpan W, std::size_t k, std::size_t count, std::uint64_t min_freq,
                                         std::uint64_t seed) {
    KmerIndex idx = kmer_counts(W, k);
    std::vector<Kmer> pool;
    for (const auto& [u, c] : idx.map())
        if (c >= min_freq) pool.push_back(u);
    std::sort(pool.begin(), pool.end());
    std::mt19937_64 rng(seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    if (pool.size() > count) pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

Alphabet synthetic_alphabet(std::size_t sigma) {
    std::vector<std::string> letters;
    if (sigma <= 26) {
        for (std::size_t a = 0; a < sigma; ++a) letters.emplace_back(1, static_cast<char>('a' + a));
        return Alphabet::from_letters(std::move(letters), InputMode::Char);
    }
    for (std::size_t a = 0; a < sigma; ++a) letters.push_back(std::to_string(a));
    return Alphabet::from_letters(std::move(letters), InputMode::Token);
}

}  // namespace strsan
