#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "strsan/alphabet.hpp"
#include "strsan/core.hpp"
#include "strsan/eval.hpp"
#include "strsan/mcsr.hpp"

namespace strsan {

enum class Pipeline { Tpm, Tm, Tmi, Etfs, Ba, Tfs, Pfs };

std::optional<Pipeline> parse_pipeline(std::string_view name);
const char* pipeline_name(Pipeline p);

struct RunConfig {
    std::size_t k = 0;
    std::uint64_t tau = 1;
    std::optional<std::int64_t> theta;  // nullopt: number of separators
    std::optional<double> rho;          // required by tmi
    InputMode mode = InputMode::Char;
    Pipeline pipeline = Pipeline::Tpm;
    std::string cost_model = "uniform";  // "uniform" or a table file path
    bool positions = false;              // sensitive input lists positions
    bool timings = true;
};

/// Instance plus the alphabet it was encoded with.
struct LoadedInput {
    Alphabet alphabet;
    SanitizationInstance inst;
    std::vector<std::string> warnings;
};

/// Parses the string text and the sensitive input (patterns one per
/// line, or whitespace-separated positions).
LoadedInput parse_inputs(std::string_view text, std::string_view sensitive, const RunConfig& cfg);

/// Cost table format, one directive per line ("#" starts a comment):
///   ghost <non-negative number>
///   <letter> <integer weight>    weight of placing that letter
///   eps <integer weight>         weight of deleting a separator
///   forbid <letter>|eps
CostModel load_cost_model(std::string_view table, const Alphabet& alphabet, std::uint64_t tau);

struct RunResult {
    Sequence output;
    MetricsReport report;
    std::vector<std::pair<std::string, std::string>> fields;  // ordered extra report lines
};

/// Runs one pipeline. Throws Infeasible when separator replacement fails.
RunResult run_pipeline(const LoadedInput& input, const RunConfig& cfg, const CostModel& cm);

/// Flat key=value lines followed by one "lost=" or "ghost=" line per pattern.
std::string format_report(const RunResult& r, const Alphabet& alphabet, bool timings);

/// Uniformly random letters 0..sigma-1.
Sequence generate_uniform(std::size_t n, std::size_t sigma, std::uint64_t seed);

/// Up to `count` distinct length-k patterns of W with frequency >= min_freq,
/// drawn at random.
std::vector<Kmer> pick_frequent_patterns(TokenSpan W, std::size_t k, std::size_t count, std::uint64_t min_freq,
                                         std::uint64_t seed);

/// Default letters for generated data: a..z for small alphabets, else decimal tokens.
Alphabet synthetic_alphabet(std::size_t sigma);

}  // namespace strsan
