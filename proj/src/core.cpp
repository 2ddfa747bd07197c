#include "strsan/core.hpp"

#include <string>

namespace strsan {

namespace {

std::size_t validate_text(const Sequence& W, std::size_t k, std::size_t sigma) {
    if (k == 0 || k >= W.size())
        throw BadK("k must satisfy 0 < k < n (k=" + std::to_string(k) +
                   ", n=" + std::to_string(W.size()) + ")");
    Token top = 0;
    for (std::size_t i = 0; i < W.size(); ++i) {
        if (is_separator(W[i]))
            throw SeparatorInInput("separator at position " + std::to_string(i));
        top = std::max(top, W[i]);
    }
    if (sigma == 0) return static_cast<std::size_t>(top) + 1;
    if (top >= sigma) throw std::invalid_argument("token outside the alphabet");
    return sigma;
}

SanitizationInstance finish(Sequence W, std::size_t k, std::size_t sigma, KmerSet sensitive) {
    SanitizationInstance inst;
    inst.W = std::move(W);
    inst.k = k;
    inst.sigma = sigma;
    const std::size_t n = inst.W.size();
    const std::size_t last = n - k;
    inst.C.assign(n, 0);

    KmerSet present;
    TokenSpan w(inst.W);
    for (std::size_t i = 0; i <= last; ++i) {
        auto window = w.subspan(i, k);
        auto it = sensitive.find(window);
        if (it != sensitive.end()) {
            inst.S.push_back(i);
            inst.C[i] = 1;
            if (present.find(window) == present.end()) present.insert(*it);
        } else {
            inst.I.push_back(i);
        }
    }
    for (std::size_t i = last + 1; i < n; ++i) inst.C[i] = inst.C[last];

    for (const auto& p : sensitive)
        if (present.find(p) == present.end()) inst.absent.push_back(p);
    std::sort(inst.absent.begin(), inst.absent.end());
    inst.sensitive = std::move(sensitive);
    return inst;
}

}  // namespace

SanitizationInstance build_instance(Sequence W, std::size_t k, const std::vector<Kmer>& patterns,
                                    std::size_t sigma) {
    sigma = validate_text(W, k, sigma);
    KmerSet sensitive;
    for (const auto& p : patterns) {
        if (p.size() != k)
            throw BadPattern("pattern length " + std::to_string(p.size()) + " differs from k=" +
                             std::to_string(k));
        for (Token t : p)
            if (is_separator(t) || t >= sigma)
                throw BadPattern("pattern contains a token outside the alphabet");
        sensitive.insert(p);
    }
    return finish(std::move(W), k, sigma, std::move(sensitive));
}

SanitizationInstance build_instance_from_positions(Sequence W, std::size_t k,
                                                   const std::vector<std::size_t>& positions,
                                                   std::size_t sigma) {
    sigma = validate_text(W, k, sigma);
    KmerSet sensitive;
    const std::size_t last = W.size() - k;
    for (std::size_t p : positions) {
        if (p > last)
            throw BadPosition("position " + std::to_string(p) + " exceeds n-k=" +
                              std::to_string(last));
        sensitive.insert(to_kmer(TokenSpan(W).subspan(p, k)));
    }
    return finish(std::move(W), k, sigma, std::move(sensitive));
}

KmerIndex::KmerIndex(std::size_t k, KmerMap<std::uint64_t> counts)
    : k_(k), counts_(std::move(counts)) {
    for (const auto& [key, c] : counts_) total_ += c;
}

std::uint64_t KmerIndex::count(TokenSpan pattern) const {
    auto it = counts_.find(pattern);
    return it == counts_.end() ? 0 : it->second;
}

KmerIndex kmer_counts(TokenSpan T, std::size_t k) {
    KmerMap<std::uint64_t> counts;
    for_each_window(T, k, [&](std::size_t p) {
        auto window = T.subspan(p, k);
        auto it = counts.find(window);
        if (it == counts.end())
            counts.emplace(to_kmer(window), 1);
        else
            ++it->second;
    });
    return KmerIndex(k, std::move(counts));
}

std::optional<std::size_t> first_sensitive(TokenSpan T, std::size_t k, const KmerSet& sensitive) {
    std::optional<std::size_t> hit;
    if (sensitive.empty()) return hit;
    std::size_t clean = 0;
    for (std::size_t i = 0; i < T.size(); ++i) {
        clean = is_separator(T[i]) ? 0 : clean + 1;
        if (clean >= k && sensitive.find(T.subspan(i + 1 - k, k)) != sensitive.end())
            return i + 1 - k;
    }
    return hit;
}

std::optional<std::size_t> first_sensitive(TokenSpan T, const SanitizationInstance& inst) {
    return first_sensitive(T, inst.k, inst.sensitive);
}

bool contains_sensitive(TokenSpan T, const SanitizationInstance& inst) {
    return first_sensitive(T, inst).has_value();
}

}  // namespace strsan
