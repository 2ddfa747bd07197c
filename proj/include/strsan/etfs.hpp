#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "strsan/alphabet.hpp"
#include "strsan/core.hpp"

namespace strsan {

/// Either extend the current block by `tail`, or open a new block (separator
/// filler) holding `pattern`.
struct MergeChoice {
    Kmer tail;
    Kmer pattern;
    bool operator==(const MergeChoice&) const = default;
};

/// Separator filler followed by `pattern`.
struct Interleave {
    Kmer pattern;
    bool operator==(const Interleave&) const = default;
};

using RegexSegment = std::variant<MergeChoice, Interleave>;

/// Leading filler, `first`, the segments, trailing filler. Fillers never hold k
/// consecutive letters and stay symbolic. With `fallback` set the expression
/// accepts any string without k consecutive letters.
struct SanRegex {
    std::size_t k = 0;
    std::size_t sigma = 0;
    bool fallback = false;
    Kmer first;
    std::vector<RegexSegment> segments;

    /// Human-readable form using the given letters.
    std::string describe(const Alphabet& alphabet) const;
    /// Symbol count with every gadget written out.
    std::size_t flattened_length() const;
    /// std::regex (ECMAScript) pattern for char-mode alphabets; code c maps to letters[c].
    std::string to_ecmascript(const std::string& letters) const;
};

/// Throws NoNonSensitive when no occurrence is non-sensitive.
SanRegex build_regex(const SanitizationInstance& inst);
SanRegex fallback_regex(std::size_t k, std::size_t sigma);

/// Epsilon automaton for a SanRegex. State ids follow a topological order of
/// the non-loop edges; loop-closing edges point backwards.
struct Automaton {
    enum class Label : std::uint8_t { Eps, Any, Hash, Lit };
    struct Edge {
        std::uint32_t from = 0, to = 0;
        Label label = Label::Eps;
        Token lit = 0;
    };
    std::uint32_t states = 0;
    std::uint32_t start = 0, accept = 0;
    std::size_t sigma = 0;
    std::vector<Edge> edges;
    std::vector<std::uint32_t> in_begin;  // CSR over incoming edges, size states + 1
    std::vector<std::uint32_t> in_edges;
};

Automaton compile(const SanRegex& e);

/// Membership by automaton simulation.
bool matches(const Automaton& a, TokenSpan T);
bool matches(const SanRegex& e, TokenSpan T);

struct EngineStats {
    std::size_t states = 0;
    std::size_t edges = 0;
    std::size_t cells = 0;
};

struct MatchResult {
    Sequence T;
    std::size_t distance = 0;
    EngineStats stats;
};

/// A string matching E at minimum edit distance from W. Among co-optimal
/// strings fewer separators win.
MatchResult approx_regex_match(TokenSpan W, const SanRegex& e);

MatchResult etfs_sanitize(const SanitizationInstance& inst);

}  // namespace strsan
