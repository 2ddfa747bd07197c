#pragma once

#include <vector>

#include "strsan/core.hpp"
#include "strsan/suffix_array.hpp"

namespace strsan {

/// A string over the alphabet plus separator, viewed as blocks split at "#".
struct SanitizedString {
    Sequence tokens;

    std::size_t size() const noexcept { return tokens.size(); }
    std::size_t separators() const;
    std::vector<TokenSpan> blocks() const;
    bool operator==(const SanitizedString&) const = default;
};

struct Segment {
    enum class Kind : std::uint8_t { Interval, Separator };
    Kind kind = Kind::Separator;
    std::size_t begin = 0;  // inclusive
    std::size_t end = 0;    // inclusive

    static Segment interval(std::size_t i, std::size_t j) { return {Kind::Interval, i, j}; }
    static Segment separator() { return {Kind::Separator, 0, 0}; }
    bool is_separator() const noexcept { return kind == Kind::Separator; }
    std::size_t length() const noexcept { return is_separator() ? 1 : end - begin + 1; }
    bool operator==(const Segment&) const = default;
};

/// Pointer representation of the TFS output against W.
struct CompactTfs {
    std::vector<Segment> segments;

    std::size_t length() const;
    std::size_t separators() const;
    bool operator==(const CompactTfs&) const = default;
};

SanitizedString tfs_sanitize(const SanitizationInstance& inst);

/// Same output as tfs_sanitize, with constant-time overlap tests against
/// precomputed (k-1)-gram classes of W.
CompactTfs tfs_compact(const SanitizationInstance& inst);
CompactTfs tfs_compact(const SanitizationInstance& inst, const GramClasses& overlap_classes);

/// Throws OutOfBounds if an interval leaves W.
SanitizedString expand(const CompactTfs& c, TokenSpan W);

/// Upper bound on the output length for n letters and pattern length k.
std::size_t tfs_length_bound(std::size_t n, std::size_t k);
std::size_t tfs_separator_bound(std::size_t n, std::size_t k);

}  // namespace strsan
