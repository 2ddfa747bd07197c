#pragma once

#include <random>
#include <string>
#include <string_view>

#include "strsan/core.hpp"
#include "strsan/tfs.hpp"

namespace strsan::testing {

// Letters a, b, c, ... map to codes 0, 1, 2, ...; '#' maps to the separator.
inline Sequence seq(std::string_view s) {
    Sequence out;
    out.reserve(s.size());
    for (char c : s) out.push_back(c == '#' ? kSeparator : static_cast<Token>(c - 'a'));
    return out;
}

inline std::string str(TokenSpan s) {
    std::string out;
    out.reserve(s.size());
    for (Token t : s) out.push_back(is_separator(t) ? '#' : static_cast<char>('a' + t));
    return out;
}

inline std::string str(const SanitizedString& s) { return str(s.tokens); }

inline std::vector<Kmer> kmers(std::initializer_list<std::string_view> pats) {
    std::vector<Kmer> out;
    for (auto p : pats) out.push_back(seq(p));
    return out;
}

inline SanitizationInstance instance(std::string_view W, std::size_t k, std::initializer_list<std::string_view> pats) {
    return build_instance(seq(W), k, kmers(pats));
}

inline Sequence random_string(std::mt19937_64& rng, std::size_t n, std::size_t sigma) {
    std::uniform_int_distribution<Token> letter(0, static_cast<Token>(sigma - 1));
    Sequence W(n);
    for (auto& t : W) t = letter(rng);
    return W;
}

// W uniform over sigma letters; each window is picked as sensitive with
// probability `density`, then the pick is closed under pattern equality.
inline SanitizationInstance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t sigma, std::size_t k,
                                            double density = 0.3) {
    Sequence W = random_string(rng, n, sigma);
    std::bernoulli_distribution pick(density);
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i + k <= n; ++i)
        if (pick(rng)) pos.push_back(i);
    return build_instance_from_positions(std::move(W), k, pos, sigma);
}

}  // namespace strsan::testing
