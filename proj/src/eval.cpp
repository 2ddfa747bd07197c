#include "strsan/eval.hpp"

#include <set>

#include "strsan/suffix_array.hpp"
#include "strsan/tfs.hpp"

namespace strsan {

Sequence ba_sanitize(const SanitizationInstance& inst) {
    const std::size_t k = inst.k, sigma = inst.sigma;
    Sequence Z = inst.W;
    if (inst.sensitive.empty()) return Z;
    std::vector<std::uint64_t> freq(sigma, 0);
    for (Token t : Z) ++freq[t];
    TokenSpan z(Z);

    auto window_sensitive = [&](std::size_t s) {
        auto w = z.subspan(s, k);
        return !has_separator(w) && inst.is_sensitive(w);
    };
    auto safe_at = [&](std::size_t p) {
        std::size_t lo = p + 1 >= k ? p + 1 - k : 0;
        for (std::size_t s = lo; s <= p && s + k <= Z.size(); ++s)
            if (window_sensitive(s)) return false;
        return true;
    };

    for (std::size_t i = 0; i + k <= Z.size(); ++i) {
        if (!window_sensitive(i)) continue;
        std::size_t pick = i;
        for (std::size_t p = i + 1; p < i + k; ++p)
            if (freq[Z[p]] > freq[Z[pick]]) pick = p;

        std::vector<char> in_window(sigma, 0);
        for (std::size_t p = i; p < i + k; ++p) in_window[Z[p]] = 1;
        std::vector<Token> options;
        for (std::size_t a = 0; a < sigma; ++a)
            if (!in_window[a]) options.push_back(static_cast<Token>(a));
        std::stable_sort(options.begin(), options.end(),
                         [&](Token a, Token b) { return freq[a] < freq[b]; });

        const Token old = Z[pick];
        --freq[old];
        bool placed = false;
        for (Token a : options) {
            Z[pick] = a;
            if (safe_at(pick)) {
                ++freq[a];
                placed = true;
                break;
            }
        }
        if (!placed) Z[pick] = kSeparator;
    }
    return Z;
}

namespace {

template <typename Fn>
void for_union(const KmerIndex& a, const KmerIndex& b, Fn&& fn) {
    for (const auto& [u, c] : a.map()) fn(u, c, b.count(u));
    for (const auto& [u, c] : b.map())
        if (a.count(u) == 0) fn(u, std::uint64_t{0}, c);
}

}  // namespace

std::uint64_t distortion(TokenSpan W, TokenSpan Z, std::size_t k, const KmerSet& sensitive) {
    KmerIndex fw = kmer_counts(W, k), fz = kmer_counts(Z, k);
    std::uint64_t total = 0;
    for_union(fw, fz, [&](const Kmer& u, std::uint64_t a, std::uint64_t b) {
        if (sensitive.find(u) != sensitive.end()) return;
        std::uint64_t d = a > b ? a - b : b - a;
        total += d * d;
    });
    return total;
}

LostGhost lost_ghost(TokenSpan W, TokenSpan Z, std::size_t k, std::uint64_t tau, const KmerSet& sensitive) {
    if (tau < 1) throw std::invalid_argument("tau must be at least 1");
    KmerIndex fw = kmer_counts(W, k), fz = kmer_counts(Z, k);
    LostGhost out;
    for_union(fw, fz, [&](const Kmer& u, std::uint64_t a, std::uint64_t b) {
        if (sensitive.find(u) != sensitive.end()) return;
        if (a >= tau && b < tau) out.lost.push_back(u);
        if (a < tau && b >= tau) out.ghost.push_back(u);
    });
    std::sort(out.lost.begin(), out.lost.end());
    std::sort(out.ghost.begin(), out.ghost.end());
    return out;
}

std::size_t edit_distance(TokenSpan U, TokenSpan V) {
    std::vector<std::size_t> row(V.size() + 1), next(V.size() + 1);
    for (std::size_t j = 0; j <= V.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= U.size(); ++i) {
        next[0] = i;
        for (std::size_t j = 1; j <= V.size(); ++j)
            next[j] = std::min({row[j] + 1, next[j - 1] + 1, row[j - 1] + (U[i - 1] == V[j - 1] ? 0 : 1)});
        row.swap(next);
    }
    return row[V.size()];
}

double edre(TokenSpan W, TokenSpan X, TokenSpan X_ed) {
    const auto dx = static_cast<double>(edit_distance(W, X));
    const auto ded = static_cast<double>(edit_distance(W, X_ed));
    if (ded == 0) {
        if (dx == 0) return 0.0;
        throw UndefinedWhenZero("relative error undefined: reference distance is 0");
    }
    return (dx - ded) / ded;
}

double implausible_percentage(TokenSpan Z, std::size_t k, const std::vector<ReplacementSite>& sites,
                              const KmerSet& implausible) {
    std::set<std::size_t> starts;
    for (const auto& site : sites) for_each_site_window(Z, k, site, [&](std::size_t s) { starts.insert(s); });
    if (starts.empty()) return 0.0;
    std::size_t bad = 0;
    for (std::size_t s : starts)
        if (implausible.find(Z.subspan(s, k)) != implausible.end()) ++bad;
    return 100.0 * static_cast<double>(bad) / static_cast<double>(starts.size());
}

const char* level_name(Level l) {
    switch (l) {
        case Level::C1: return "C1";
        case Level::P1: return "P1";
        case Level::Pi1: return "Pi1";
        case Level::P2: return "P2";
        case Level::P3: return "P3";
        case Level::P4: return "P4";
    }
    return "?";
}

std::optional<Level> parse_level(std::string_view name) {
    for (Level l : {Level::C1, Level::P1, Level::Pi1, Level::P2, Level::P3, Level::P4})
        if (name == level_name(l)) return l;
    return std::nullopt;
}

namespace {

VerifyResult fail(std::string msg, std::optional<std::size_t> pos = {}, std::optional<Kmer> pat = {}) {
    VerifyResult r;
    r.ok = false;
    r.message = std::move(msg);
    r.position = pos;
    r.pattern = std::move(pat);
    return r;
}

VerifyResult check_c1(TokenSpan T, const SanitizationInstance& inst) {
    if (auto p = first_sensitive(T, inst))
        return fail("sensitive pattern at position " + std::to_string(*p), *p, to_kmer(T.subspan(*p, inst.k)));
    return {};
}

VerifyResult check_p1(TokenSpan T, const SanitizationInstance& inst) {
    const std::size_t k = inst.k;
    TokenSpan w(inst.W);
    std::size_t idx = 0;
    std::optional<VerifyResult> bad;
    for_each_window(T, k, [&](std::size_t p) {
        if (bad) return;
        auto u = T.subspan(p, k);
        if (inst.is_sensitive(u)) return;
        if (idx >= inst.I.size()) {
            bad = fail("extra non-sensitive pattern at position " + std::to_string(p), p, to_kmer(u));
            return;
        }
        auto expect = w.subspan(inst.I[idx], k);
        if (!std::equal(u.begin(), u.end(), expect.begin())) {
            bad = fail("pattern " + std::to_string(idx) + " of the order differs at position " + std::to_string(p),
                       p, to_kmer(u));
            return;
        }
        ++idx;
    });
    if (bad) return *bad;
    if (idx < inst.I.size())
        return fail("missing non-sensitive pattern " + std::to_string(idx), inst.I[idx],
                    to_kmer(w.subspan(inst.I[idx], k)));
    return {};
}

VerifyResult check_pi1(TokenSpan T, const SanitizationInstance& inst) {
    const std::size_t k = inst.k;
    const auto& I = inst.I;
    const Sequence& W = inst.W;
    std::map<Sequence, std::size_t> needed;
    for (std::size_t a = 0; a < I.size();) {
        Sequence spelled(W.begin() + static_cast<std::ptrdiff_t>(I[a]),
                         W.begin() + static_cast<std::ptrdiff_t>(I[a] + k));
        std::size_t b = a + 1;
        while (b < I.size() && std::equal(W.begin() + static_cast<std::ptrdiff_t>(I[b - 1] + 1),
                                          W.begin() + static_cast<std::ptrdiff_t>(I[b - 1] + k),
                                          W.begin() + static_cast<std::ptrdiff_t>(I[b]))) {
            spelled.push_back(W[I[b] + k - 1]);
            ++b;
        }
        ++needed[spelled];
        a = b;
    }
    SuffixIndex index(T);
    for (const auto& [s, c] : needed) {
        std::size_t have = index.count(s);
        if (have < c)
            return fail("chain of length " + std::to_string(s.size()) + " occurs " + std::to_string(have) +
                            " times, needs " + std::to_string(c),
                        std::nullopt, s);
    }
    return {};
}

VerifyResult check_p2(TokenSpan T, const SanitizationInstance& inst) {
    KmerIndex fw = kmer_counts(inst.W, inst.k), ft = kmer_counts(T, inst.k);
    std::optional<Kmer> worst;  // smallest differing pattern, for a stable counterexample
    for_union(fw, ft, [&](const Kmer& u, std::uint64_t a, std::uint64_t b) {
        if (a == b || inst.is_sensitive(u)) return;
        if (!worst || u < *worst) worst = u;
    });
    if (worst)
        return fail("frequency of a non-sensitive pattern changed: " + std::to_string(fw.count(*worst)) +
                        " in W, " + std::to_string(ft.count(*worst)) + " in output",
                    std::nullopt, worst);
    return {};
}

VerifyResult check_p3(TokenSpan T, const SanitizationInstance& inst) {
    if (T.empty()) return {};
    if (is_separator(T.front())) return fail("starts with a separator", 0);
    if (is_separator(T.back())) return fail("ends with a separator", T.size() - 1);
    std::size_t count = 0;
    std::optional<std::size_t> last;
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (!is_separator(T[i])) continue;
        ++count;
        if (last && i - *last < inst.k + 1)
            return fail("separators at " + std::to_string(*last) + " and " + std::to_string(i) + " are too close", i);
        last = i;
    }
    const std::size_t cap = tfs_separator_bound(inst.n(), inst.k);
    if (count > cap)
        return fail(std::to_string(count) + " separators exceed the bound " + std::to_string(cap));
    return {};
}

VerifyResult check_p4(TokenSpan T, const SanitizationInstance& inst) {
    const std::size_t cap = tfs_length_bound(inst.n(), inst.k);
    if (T.size() > cap) return fail("length " + std::to_string(T.size()) + " exceeds " + std::to_string(cap));
    return {};
}

}  // namespace

VerifyResult verify(TokenSpan T, const SanitizationInstance& inst, Level level) {
    switch (level) {
        case Level::C1: return check_c1(T, inst);
        case Level::P1: return check_p1(T, inst);
        case Level::Pi1: return check_pi1(T, inst);
        case Level::P2: return check_p2(T, inst);
        case Level::P3: return check_p3(T, inst);
        case Level::P4: return check_p4(T, inst);
    }
    return fail("unknown level");
}

}  // namespace strsan
