#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "strsan/types.hpp"

namespace strsan {

/// W together with its sensitive occurrences. Immutable once built.
struct SanitizationInstance {
    Sequence W;
    std::size_t k = 0;
    std::size_t sigma = 0;               // letters are 0..sigma-1
    std::vector<std::size_t> S;          // sorted sensitive occurrences
    std::vector<std::size_t> I;          // sorted non-sensitive occurrences
    std::vector<std::uint8_t> C;         // length n, tail rule applied
    KmerSet sensitive;                   // every sensitive pattern, including absent ones
    std::vector<Kmer> absent;            // requested patterns that never occur in W

    std::size_t n() const noexcept { return W.size(); }
    bool is_sensitive(TokenSpan window) const { return sensitive.find(window) != sensitive.end(); }
};

/// Marks every occurrence of each pattern. `sigma` of 0 means "infer from W".
SanitizationInstance build_instance(Sequence W, std::size_t k, const std::vector<Kmer>& patterns,
                                    std::size_t sigma = 0);

/// Marks the given occurrences and closes the set under pattern equality.
SanitizationInstance build_instance_from_positions(Sequence W, std::size_t k,
                                                   const std::vector<std::size_t>& positions,
                                                   std::size_t sigma = 0);

/// Frequencies of separator-free length-k windows.
class KmerIndex {
public:
    KmerIndex() = default;
    KmerIndex(std::size_t k, KmerMap<std::uint64_t> counts);

    std::size_t k() const noexcept { return k_; }
    std::uint64_t count(TokenSpan pattern) const;
    std::size_t distinct() const noexcept { return counts_.size(); }
    std::uint64_t total() const noexcept { return total_; }
    const KmerMap<std::uint64_t>& map() const noexcept { return counts_; }

private:
    std::size_t k_ = 0;
    KmerMap<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

KmerIndex kmer_counts(TokenSpan T, std::size_t k);

/// Calls fn(p) for every start p of a length-k window of T free of separators.
template <typename Fn>
void for_each_window(TokenSpan T, std::size_t k, Fn&& fn) {
    if (k == 0 || T.size() < k) return;
    std::size_t clean = 0;  // length of the separator-free run ending at i
    for (std::size_t i = 0; i < T.size(); ++i) {
        clean = is_separator(T[i]) ? 0 : clean + 1;
        if (clean >= k) fn(i + 1 - k);
    }
}

/// Start of the leftmost separator-free window of T that is sensitive.
std::optional<std::size_t> first_sensitive(TokenSpan T, const SanitizationInstance& inst);
std::optional<std::size_t> first_sensitive(TokenSpan T, std::size_t k, const KmerSet& sensitive);

bool contains_sensitive(TokenSpan T, const SanitizationInstance& inst);

}  // namespace strsan
