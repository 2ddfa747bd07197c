#include "strsan/suffix_array.hpp"

#include <numeric>

namespace strsan {

std::vector<std::uint32_t> suffix_array(TokenSpan s) {
    const std::size_t n = s.size();
    std::vector<std::uint32_t> sa(n);
    if (n == 0) return sa;

    // Compress tokens to 0..m-1 preserving order.
    std::vector<Token> letters(s.begin(), s.end());
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    std::vector<std::uint32_t> rank(n), tmp(n);
    for (std::size_t i = 0; i < n; ++i)
        rank[i] = static_cast<std::uint32_t>(
            std::lower_bound(letters.begin(), letters.end(), s[i]) - letters.begin());
    std::size_t classes = letters.size();

    std::vector<std::uint32_t> cnt(std::max(classes, n) + 1);
    // Initial order by first token.
    std::fill(cnt.begin(), cnt.end(), 0);
    for (std::size_t i = 0; i < n; ++i) ++cnt[rank[i]];
    for (std::size_t c = 1; c < cnt.size(); ++c) cnt[c] += cnt[c - 1];
    for (std::size_t i = n; i-- > 0;) sa[--cnt[rank[i]]] = static_cast<std::uint32_t>(i);

    for (std::size_t h = 1; classes < n; h <<= 1) {
        // Order by second key: suffixes shorter than h first.
        std::size_t p = 0;
        for (std::size_t i = n - std::min(h, n); i < n; ++i) tmp[p++] = static_cast<std::uint32_t>(i);
        for (std::size_t j = 0; j < n; ++j)
            if (sa[j] >= h) tmp[p++] = static_cast<std::uint32_t>(sa[j] - h);
        // Stable pass on the first key.
        std::fill(cnt.begin(), cnt.begin() + static_cast<std::ptrdiff_t>(classes) + 1, 0);
        for (std::size_t i = 0; i < n; ++i) ++cnt[rank[i]];
        for (std::size_t c = 1; c <= classes; ++c) cnt[c] += cnt[c - 1];
        for (std::size_t i = n; i-- > 0;) sa[--cnt[rank[tmp[i]]]] = tmp[i];

        auto second = [&](std::uint32_t i) -> std::int64_t {
            return i + h < n ? static_cast<std::int64_t>(rank[i + h]) : -1;
        };
        tmp[sa[0]] = 0;
        classes = 1;
        for (std::size_t i = 1; i < n; ++i) {
            std::uint32_t a = sa[i - 1], b = sa[i];
            bool same = rank[a] == rank[b] && second(a) == second(b);
            tmp[b] = same ? static_cast<std::uint32_t>(classes - 1)
                          : static_cast<std::uint32_t>(classes++);
        }
        rank.swap(tmp);
    }
    return sa;
}

std::vector<std::uint32_t> lcp_array(TokenSpan s, const std::vector<std::uint32_t>& sa) {
    const std::size_t n = s.size();
    std::vector<std::uint32_t> rank(n), lcp(n, 0);
    for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<std::uint32_t>(i);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rank[i] == 0) {
            h = 0;
            continue;
        }
        std::size_t j = sa[rank[i] - 1];
        while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
        lcp[rank[i]] = static_cast<std::uint32_t>(h);
        if (h > 0) --h;
    }
    return lcp;
}

GramClasses gram_classes(TokenSpan s, const std::vector<std::uint32_t>& sa,
                         const std::vector<std::uint32_t>& lcp, std::size_t len) {
    GramClasses g;
    g.len = len;
    const std::size_t n = s.size();
    g.id.assign(n, GramClasses::kNone);
    bool prev_valid = false;
    std::int64_t cur = -1;
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t p = sa[r];
        if (n - p < len) {
            prev_valid = false;
            continue;
        }
        if (!prev_valid || lcp[r] < len) ++cur;
        g.id[p] = static_cast<std::uint32_t>(cur);
        prev_valid = true;
    }
    g.count = static_cast<std::size_t>(cur + 1);
    return g;
}

GramClasses gram_classes(TokenSpan s, std::size_t len) {
    auto sa = suffix_array(s);
    auto lcp = lcp_array(s, sa);
    return gram_classes(s, sa, lcp, len);
}

SuffixIndex::SuffixIndex(TokenSpan text) : text_(text), sa_(suffix_array(text)) {}

std::size_t SuffixIndex::count(TokenSpan pattern) const {
    if (pattern.empty()) return text_.size() + 1;
    // Compare the first |pattern| tokens of a suffix with the pattern.
    auto cmp = [&](std::uint32_t pos) {
        std::size_t m = std::min(pattern.size(), text_.size() - pos);
        for (std::size_t i = 0; i < m; ++i) {
            if (text_[pos + i] < pattern[i]) return -1;
            if (text_[pos + i] > pattern[i]) return 1;
        }
        return m < pattern.size() ? -1 : 0;
    };
    auto lo = std::partition_point(sa_.begin(), sa_.end(), [&](std::uint32_t p) { return cmp(p) < 0; });
    auto hi = std::partition_point(lo, sa_.end(), [&](std::uint32_t p) { return cmp(p) == 0; });
    return static_cast<std::size_t>(hi - lo);
}

}  // namespace strsan
