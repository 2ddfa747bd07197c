#include "strsan/tfs.hpp"

#include <stdexcept>

namespace strsan {

std::size_t SanitizedString::separators() const {
    return static_cast<std::size_t>(std::count_if(tokens.begin(), tokens.end(), is_separator));
}

std::vector<TokenSpan> SanitizedString::blocks() const {
    std::vector<TokenSpan> out;
    if (tokens.empty()) return out;
    TokenSpan all(tokens);
    std::size_t start = 0;
    for (std::size_t i = 0; i <= tokens.size(); ++i) {
        if (i == tokens.size() || is_separator(tokens[i])) {
            out.push_back(all.subspan(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::size_t CompactTfs::length() const {
    std::size_t total = 0;
    for (const auto& s : segments) total += s.length();
    return total;
}

std::size_t CompactTfs::separators() const {
    return static_cast<std::size_t>(
        std::count_if(segments.begin(), segments.end(), [](const Segment& s) { return s.is_separator(); }));
}

std::size_t tfs_separator_bound(std::size_t n, std::size_t k) { return (n - k + 1) / 2; }

std::size_t tfs_length_bound(std::size_t n, std::size_t k) {
    std::size_t m = n - k + 1;
    return (m + 1) / 2 * k + m / 2;
}

namespace {

// Shared driver. Emit receives (kind, from, to) with the letters W[from..to].
template <typename Overlap, typename Sink>
void run_tfs(const SanitizationInstance& inst, Overlap&& overlaps, Sink& sink) {
    const std::size_t n = inst.n(), k = inst.k;
    const auto& C = inst.C;
    std::size_t j = n;
    for (std::size_t i = 0; i < n; ++i)
        if (C[i] == 0) {
            j = i;
            break;
        }
    if (j + k - 1 < n) {
        sink.letters(j, j + k - 1);
        j += k;
    }
    std::size_t f = 0;
    while (j < n) {
        const std::size_t p = j - k, c = p + 1;
        if (!C[p] && !C[c]) {
            sink.letters(j, j);
        } else if (!C[p] && C[c]) {
            f = c;
        } else if (C[p] && !C[c]) {
            if (overlaps(c, f)) {
                sink.letters(j, j);
            } else {
                sink.separator();
                sink.letters(j + 1 - k, j);
            }
        }
        ++j;
    }
}

struct ExpandedSink {
    const Sequence& W;
    Sequence out;
    void letters(std::size_t i, std::size_t j) { out.insert(out.end(), W.begin() + i, W.begin() + j + 1); }
    void separator() { out.push_back(kSeparator); }
};

struct CompactSink {
    std::vector<Segment> out;
    void letters(std::size_t i, std::size_t j) {
        if (!out.empty() && !out.back().is_separator() && out.back().end + 1 == i)
            out.back().end = j;
        else
            out.push_back(Segment::interval(i, j));
    }
    void separator() { out.push_back(Segment::separator()); }
};

void check_edges(bool starts_with_sep, bool ends_with_sep) {
    if (starts_with_sep || ends_with_sep)
        throw std::logic_error("sanitized string begins or ends with a separator");
}

}  // namespace

SanitizedString tfs_sanitize(const SanitizationInstance& inst) {
    const std::size_t len = inst.k - 1;
    const Sequence& W = inst.W;
    auto overlaps = [&](std::size_t a, std::size_t b) {
        return std::equal(W.begin() + a, W.begin() + a + len, W.begin() + b);
    };
    ExpandedSink sink{W, {}};
    run_tfs(inst, overlaps, sink);
    if (!sink.out.empty()) check_edges(is_separator(sink.out.front()), is_separator(sink.out.back()));
    return SanitizedString{std::move(sink.out)};
}

CompactTfs tfs_compact(const SanitizationInstance& inst, const GramClasses& classes) {
    if (classes.len != inst.k - 1 || classes.id.size() != inst.n())
        throw std::invalid_argument("gram classes do not match the instance");
    auto overlaps = [&](std::size_t a, std::size_t b) { return classes.id[a] == classes.id[b]; };
    CompactSink sink;
    run_tfs(inst, overlaps, sink);
    if (!sink.out.empty()) check_edges(sink.out.front().is_separator(), sink.out.back().is_separator());
    return CompactTfs{std::move(sink.out)};
}

CompactTfs tfs_compact(const SanitizationInstance& inst) {
    return tfs_compact(inst, gram_classes(inst.W, inst.k - 1));
}

SanitizedString expand(const CompactTfs& c, TokenSpan W) {
    Sequence out;
    out.reserve(c.length());
    for (const auto& s : c.segments) {
        if (s.is_separator()) {
            out.push_back(kSeparator);
            continue;
        }
        if (s.begin > s.end || s.end >= W.size())
            throw OutOfBounds("interval [" + std::to_string(s.begin) + "," + std::to_string(s.end) +
                              "] outside a text of length " + std::to_string(W.size()));
        out.insert(out.end(), W.begin() + static_cast<std::ptrdiff_t>(s.begin),
                   W.begin() + static_cast<std::ptrdiff_t>(s.end) + 1);
    }
    return SanitizedString{std::move(out)};
}

}  // namespace strsan
