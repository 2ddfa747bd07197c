#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace strsan {

// Letters are coded 0..sigma-1 in alphabet order. The separator has a code
// no alphabet can reach, so it sorts after every letter.
using Token = std::uint32_t;
using Sequence = std::vector<Token>;
using Kmer = std::vector<Token>;
using TokenSpan = std::span<const Token>;

inline constexpr Token kSeparator = std::numeric_limits<Token>::max();

inline bool is_separator(Token t) noexcept { return t == kSeparator; }

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct SeparatorInInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BadK : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BadPosition : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct BadPattern : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct OutOfBounds : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct BlockTooShort : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoNonSensitive : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UndefinedWhenZero : std::domain_error {
    using std::domain_error::domain_error;
};
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// k-mer hashing with heterogeneous lookup, so spans into a text can be
// looked up without materializing a Kmer.
// ---------------------------------------------------------------------------

struct KmerHash {
    using is_transparent = void;

    std::size_t operator()(TokenSpan s) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ s.size();
        for (Token t : s) {
            h ^= t + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ULL;
        }
        h ^= h >> 31;
        return static_cast<std::size_t>(h);
    }
    std::size_t operator()(const Kmer& k) const noexcept { return (*this)(TokenSpan(k)); }
};

struct KmerEq {
    using is_transparent = void;

    bool operator()(TokenSpan a, TokenSpan b) const noexcept {
        return std::equal(a.begin(), a.end(), b.begin(), b.end());
    }
};

using KmerSet = std::unordered_set<Kmer, KmerHash, KmerEq>;

template <typename V>
using KmerMap = std::unordered_map<Kmer, V, KmerHash, KmerEq>;

inline Kmer to_kmer(TokenSpan s) { return Kmer(s.begin(), s.end()); }

inline bool has_separator(TokenSpan s) noexcept {
    for (Token t : s)
        if (is_separator(t)) return true;
    return false;
}

}  // namespace strsan
