#pragma once

#include <cstdint>
#include <vector>

#include "strsan/types.hpp"

namespace strsan {

/// Suffix array by prefix doubling with radix passes. Separators compare
/// greater than every letter.
std::vector<std::uint32_t> suffix_array(TokenSpan s);

/// Kasai LCP: lcp[i] = lcp(suffix sa[i-1], suffix sa[i]), lcp[0] = 0.
std::vector<std::uint32_t> lcp_array(TokenSpan s, const std::vector<std::uint32_t>& sa);

/// Dense lexicographic ids of the length-`len` substrings of a text.
struct GramClasses {
    static constexpr std::uint32_t kNone = 0xffffffffu;
    std::size_t len = 0;
    std::vector<std::uint32_t> id;  // per start position; kNone if the gram runs off the end
    std::size_t count = 0;          // number of distinct grams
};

GramClasses gram_classes(TokenSpan s, const std::vector<std::uint32_t>& sa,
                         const std::vector<std::uint32_t>& lcp, std::size_t len);
GramClasses gram_classes(TokenSpan s, std::size_t len);

/// Occurrence counting by binary search over a suffix array.
class SuffixIndex {
public:
    explicit SuffixIndex(TokenSpan text);
    std::size_t count(TokenSpan pattern) const;

private:
    TokenSpan text_;
    std::vector<std::uint32_t> sa_;
};

}  // namespace strsan
