#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strsan/core.hpp"
#include "strsan/mcsr.hpp"

namespace strsan {

/// Baseline: inside each sensitive window replace its most frequent letter
/// by the rarest safe letter absent from the window, or by "#".
Sequence ba_sanitize(const SanitizationInstance& inst);

/// Sum of squared frequency differences over non-sensitive length-k patterns
/// occurring in W or Z.
std::uint64_t distortion(TokenSpan W, TokenSpan Z, std::size_t k, const KmerSet& sensitive);

struct LostGhost {
    std::vector<Kmer> lost;   // frequent in W, infrequent in Z
    std::vector<Kmer> ghost;  // infrequent in W, frequent in Z
};

/// Sensitive patterns are excluded from both lists.
LostGhost lost_ghost(TokenSpan W, TokenSpan Z, std::size_t k, std::uint64_t tau,
                     const KmerSet& sensitive = {});

std::size_t edit_distance(TokenSpan U, TokenSpan V);

/// Relative excess of d(W,X) over d(W,X_ED). Throws UndefinedWhenZero when
/// d(W,X_ED) = 0 unless d(W,X) = 0 too.
double edre(TokenSpan W, TokenSpan X, TokenSpan X_ed);

/// Percentage of replacement-site windows of Z that are in `implausible`.
double implausible_percentage(TokenSpan Z, std::size_t k, const std::vector<ReplacementSite>& sites,
                              const KmerSet& implausible);

enum class Level { C1, P1, Pi1, P2, P3, P4 };

const char* level_name(Level l);
std::optional<Level> parse_level(std::string_view name);

struct VerifyResult {
    bool ok = true;
    std::string message;
    std::optional<std::size_t> position;
    std::optional<Kmer> pattern;
    explicit operator bool() const noexcept { return ok; }
};

VerifyResult verify(TokenSpan T, const SanitizationInstance& inst, Level level);

struct MetricsReport {
    std::uint64_t distortion = 0;
    std::vector<Kmer> lost;
    std::vector<Kmer> ghost;
    std::optional<double> edre;
    std::optional<double> implausible_pct;
    std::optional<std::size_t> edit_distance;
    std::map<std::string, std::size_t> lengths;   // W, X, Y, Z, ...
    std::map<std::string, double> runtimes_ms;
};

}  // namespace strsan
