#include "strsan/mcsr.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace strsan {

CostModel CostModel::uniform(std::uint64_t tau) {
    CostModel cm;
    cm.ghost = [](std::size_t, TokenSpan) { return 1.0; };
    cm.sub = [](std::size_t, Choice) -> std::optional<std::int64_t> { return 1; };
    cm.tau = tau;
    return cm;
}

std::vector<std::size_t> separator_positions(TokenSpan Y) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < Y.size(); ++i)
        if (is_separator(Y[i])) out.push_back(i);
    return out;
}

namespace {

Context context_at(TokenSpan Y, std::size_t k, std::size_t pos, Choice choice) {
    const std::size_t reach = k - 1;
    std::size_t lo = pos;
    while (lo > 0 && pos - lo < reach && !is_separator(Y[lo - 1])) --lo;
    std::size_t hi = pos + 1;  // one past the right context
    while (hi < Y.size() && hi - pos - 1 < reach && !is_separator(Y[hi])) ++hi;
    Context c;
    c.origin = lo;
    c.left = pos - lo;
    c.tokens.reserve(hi - lo);
    c.tokens.insert(c.tokens.end(), Y.begin() + static_cast<std::ptrdiff_t>(lo),
                    Y.begin() + static_cast<std::ptrdiff_t>(pos));
    if (choice) c.tokens.push_back(*choice);
    c.tokens.insert(c.tokens.end(), Y.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                    Y.begin() + static_cast<std::ptrdiff_t>(hi));
    return c;
}

// Every length-k window of a context touches the slot or the join.
template <typename Fn>
void context_windows(const Context& c, std::size_t k, Fn&& fn) {
    if (c.tokens.size() < k) return;
    TokenSpan t(c.tokens);
    for (std::size_t m = 0; m + k <= t.size(); ++m) fn(c.origin + m, t.subspan(m, k));
}

std::vector<Choice> all_choices(std::size_t sigma) {
    std::vector<Choice> out;
    out.reserve(sigma + 1);
    for (std::size_t a = 0; a < sigma; ++a) out.emplace_back(static_cast<Token>(a));
    out.emplace_back(std::nullopt);
    return out;
}

}  // namespace

Context context_of(TokenSpan Y, std::size_t k, std::size_t separator, Choice choice) {
    auto seps = separator_positions(Y);
    if (separator >= seps.size())
        throw std::out_of_range("separator index " + std::to_string(separator) + " out of range");
    return context_at(Y, k, seps[separator], choice);
}

Sequence context_string(TokenSpan Y, std::size_t k, std::size_t separator, Choice choice) {
    return context_of(Y, k, separator, choice).tokens;
}

GhostCandidateSet candidate_ghosts(TokenSpan Y, std::size_t k, std::uint64_t tau, std::size_t sigma) {
    KmerIndex freq = kmer_counts(Y, k);
    KmerMap<std::uint64_t> gain;
    const auto choices = all_choices(sigma);
    for (std::size_t pos : separator_positions(Y)) {
        KmerMap<std::uint64_t> best;
        for (const auto& ch : choices) {
            KmerMap<std::uint64_t> local;
            context_windows(context_at(Y, k, pos, ch), k, [&](std::size_t, TokenSpan u) {
                auto it = local.find(u);
                if (it == local.end())
                    local.emplace(to_kmer(u), 1);
                else
                    ++it->second;
            });
            for (auto& [u, c] : local) {
                auto& b = best[u];
                b = std::max(b, c);
            }
        }
        for (auto& [u, c] : best) gain[u] += c;
    }
    GhostCandidateSet out;
    for (auto& [u, g] : gain) {
        std::uint64_t fy = freq.count(u);
        std::uint64_t mz = fy + g;
        if (fy < tau && mz >= tau) out.emplace(u, GhostEstimate{fy, mz});
    }
    return out;
}

MckInstance build_mck(TokenSpan Y, std::size_t k, std::size_t sigma, const GhostCandidateSet& cands,
                      const CostModel& cm, const KmerSet& sensitive, const KmerSet* implausible) {
    MckInstance mck;
    const auto seps = separator_positions(Y);
    const auto choices = all_choices(sigma);
    mck.capacity = cm.theta.value_or(static_cast<std::int64_t>(seps.size()));
    mck.classes.resize(seps.size());
    for (std::size_t i = 0; i < seps.size(); ++i) {
        for (const auto& ch : choices) {
            auto weight = cm.sub ? cm.sub(i, ch) : std::optional<std::int64_t>(1);
            if (!weight) continue;
            bool forbidden = false;
            double cost = 0;
            context_windows(context_at(Y, k, seps[i], ch), k, [&](std::size_t t, TokenSpan u) {
                if (sensitive.find(u) != sensitive.end() ||
                    (implausible && implausible->find(u) != implausible->end()))
                    forbidden = true;
                if (cands.find(u) != cands.end()) cost += cm.ghost ? cm.ghost(t, u) : 1.0;
            });
            if (!forbidden) mck.classes[i].push_back({ch, cost, *weight});
        }
        if (mck.classes[i].empty())
            throw Infeasible("Z cannot be constructed: every choice for separator " + std::to_string(i) +
                             " is forbidden");
    }
    return mck;
}

MckSelection solve_mck(const MckInstance& inst, MckTieBreak* tie) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    constexpr double kEps = 1e-9;
    const std::size_t d = inst.classes.size();
    std::vector<std::int64_t> lo(d), hi(d);
    std::int64_t base = 0, spread = 0;
    for (std::size_t i = 0; i < d; ++i) {
        const auto& cls = inst.classes[i];
        if (cls.empty()) throw Infeasible("class " + std::to_string(i) + " has no element");
        lo[i] = hi[i] = cls.front().weight;
        for (const auto& e : cls) {
            lo[i] = std::min(lo[i], e.weight);
            hi[i] = std::max(hi[i], e.weight);
        }
        base += lo[i];
        spread += hi[i] - lo[i];
    }
    std::int64_t cap = inst.capacity - base;
    if (cap < 0) throw Infeasible("capacity below the lightest selection");
    cap = std::min(cap, spread);
    const auto width = static_cast<std::size_t>(cap) + 1;

    // best[i][w]: cheapest completion of classes i.. within reduced capacity w.
    std::vector<double> best((d + 1) * width, kInf);
    auto at = [&](std::size_t i, std::size_t w) -> double& { return best[i * width + w]; };
    for (std::size_t w = 0; w < width; ++w) at(d, w) = 0;
    for (std::size_t i = d; i-- > 0;) {
        for (std::size_t w = 0; w < width; ++w) {
            double v = kInf;
            for (const auto& e : inst.classes[i]) {
                auto rw = static_cast<std::size_t>(e.weight - lo[i]);
                if (rw <= w) v = std::min(v, e.cost + at(i + 1, w - rw));
            }
            at(i, w) = v;
        }
    }

    MckSelection sel;
    sel.picks.resize(d);
    std::size_t w = width - 1;
    for (std::size_t i = 0; i < d; ++i) {
        const double target = at(i, w);
        const auto& cls = inst.classes[i];
        std::size_t pick = cls.size();
        double pick_score = 0;
        for (std::size_t e = 0; e < cls.size(); ++e) {
            auto rw = static_cast<std::size_t>(cls[e].weight - lo[i]);
            if (rw > w || cls[e].cost + at(i + 1, w - rw) > target + kEps) continue;
            if (!tie) {
                pick = e;
                break;
            }
            double sc = tie->score(i, e);
            if (pick == cls.size() || sc < pick_score) {
                pick = e;
                pick_score = sc;
            }
        }
        if (tie) tie->commit(i, pick);
        sel.picks[i] = pick;
        sel.cost += cls[pick].cost;
        sel.weight += cls[pick].weight;
        w -= static_cast<std::size_t>(cls[pick].weight - lo[i]);
    }
    return sel;
}

namespace {

std::uint64_t naive_count(TokenSpan W, TokenSpan U) {
    if (U.empty()) return W.size() + 1;
    std::uint64_t c = 0;
    for (std::size_t i = 0; i + U.size() <= W.size(); ++i)
        if (std::equal(U.begin(), U.end(), W.begin() + static_cast<std::ptrdiff_t>(i))) ++c;
    return c;
}

double standard_score(double freq, double head, double tail, double middle) {
    double expected = middle > 0 ? head * tail / middle : 0.0;
    return (freq - expected) / std::max(std::sqrt(expected), 1.0);
}

}  // namespace

double z_score(TokenSpan W, TokenSpan U) {
    if (U.size() <= 2) throw std::invalid_argument("z-score needs a pattern longer than 2");
    const std::size_t m = U.size();
    return standard_score(static_cast<double>(naive_count(W, U)),
                          static_cast<double>(naive_count(W, U.first(m - 1))),
                          static_cast<double>(naive_count(W, U.last(m - 1))),
                          static_cast<double>(naive_count(W, U.subspan(1, m - 2))));
}

ZScorer::ZScorer(TokenSpan W, std::size_t k)
    : k_(k), full_(kmer_counts(W, k)), head_(kmer_counts(W, k - 1)), middle_(kmer_counts(W, k - 2)) {
    if (k <= 2) throw BadK("z-score needs k > 2");
}

double ZScorer::operator()(TokenSpan U) const {
    if (U.size() != k_) throw BadPattern("pattern length differs from k");
    return standard_score(static_cast<double>(full_.count(U)), static_cast<double>(head_.count(U.first(k_ - 1))),
                          static_cast<double>(head_.count(U.last(k_ - 1))),
                          static_cast<double>(middle_.count(U.subspan(1, k_ - 2))));
}

KmerSet implausible_set(TokenSpan W, std::size_t k, std::size_t sigma, double rho) {
    if (k <= 2) throw BadK("implausible patterns need k > 2");
    if (rho > 0) throw std::invalid_argument("rho must not be positive");
    ZScorer z(W, k);
    KmerSet out;
    // A negative score needs a positive expectation, so the (k-1)-prefix occurs in W.
    Kmer u(k);
    for (std::size_t i = 0; i + k - 1 <= W.size(); ++i) {
        std::copy(W.begin() + static_cast<std::ptrdiff_t>(i), W.begin() + static_cast<std::ptrdiff_t>(i + k - 1),
                  u.begin());
        for (std::size_t a = 0; a < sigma; ++a) {
            u[k - 1] = static_cast<Token>(a);
            if (out.find(u) == out.end() && z(u) < rho) out.insert(u);
        }
    }
    return out;
}

McsrResult mcsr_sanitize(TokenSpan Y, const SanitizationInstance& inst, const CostModel& cm,
                         const KmerSet* implausible) {
    const std::size_t k = inst.k;
    McsrResult res;
    const auto seps = separator_positions(Y);
    if (seps.empty()) {
        res.Z.assign(Y.begin(), Y.end());
        res.capacity = cm.theta.value_or(0);
        return res;
    }
    auto cands = candidate_ghosts(Y, k, cm.tau, inst.sigma);
    MckInstance mck = build_mck(Y, k, inst.sigma, cands, cm, inst.sensitive, implausible);
    res.capacity = mck.capacity;

    auto bad = [&](TokenSpan u) {
        return inst.is_sensitive(u) || (implausible && implausible->find(u) != implausible->end());
    };

    // Among equal-cost choices, prefer the one whose new windows collide least
    // with windows already introduced at earlier separators.
    struct SpreadTieBreak final : MckTieBreak {
        TokenSpan Y;
        std::size_t k;
        const std::vector<std::vector<MckElement>>& classes;
        KmerMap<std::uint64_t> added;
        SpreadTieBreak(TokenSpan y, std::size_t kk, const std::vector<std::vector<MckElement>>& c)
            : Y(y), k(kk), classes(c) {}
        void windows(std::size_t i, std::size_t e, const std::function<void(const Kmer&)>& f) const {
            Sequence ctx = context_string(Y, k, i, classes[i][e].choice);
            for (std::size_t s = 0; s + k <= ctx.size(); ++s) f(Kmer(ctx.begin() + s, ctx.begin() + s + k));
        }
        double score(std::size_t i, std::size_t e) override {
            double total = 0;
            windows(i, e, [&](const Kmer& u) {
                auto it = added.find(u);
                total += 2.0 * static_cast<double>(it == added.end() ? 0 : it->second) + 1.0;
            });
            return total;
        }
        void commit(std::size_t i, std::size_t e) override {
            windows(i, e, [&](const Kmer& u) { ++added[u]; });
        }
    };

    for (;;) {
        SpreadTieBreak tie(Y, k, mck.classes);
        MckSelection sel = solve_mck(mck, &tie);
        res.Z.clear();
        res.Z.reserve(Y.size());
        res.choices.assign(seps.size(), std::nullopt);
        res.sites.assign(seps.size(), {});
        std::size_t next = 0;
        for (std::size_t i = 0; i < Y.size(); ++i) {
            if (!is_separator(Y[i])) {
                res.Z.push_back(Y[i]);
                continue;
            }
            const Choice ch = mck.classes[next][sel.picks[next]].choice;
            res.choices[next] = ch;
            res.sites[next] = {res.Z.size(), !ch.has_value()};
            if (ch) res.Z.push_back(*ch);
            ++next;
        }
        res.estimated_cost = sel.cost;
        res.weight = sel.weight;

        bool violated = false;
        TokenSpan z(res.Z);
        for (std::size_t i = 0; i < seps.size(); ++i) {
            bool hit = false;
            for_each_site_window(z, k, res.sites[i], [&](std::size_t s) { hit = hit || bad(z.subspan(s, k)); });
            if (!hit) continue;
            violated = true;
            auto& cls = mck.classes[i];
            cls.erase(cls.begin() + static_cast<std::ptrdiff_t>(sel.picks[i]));
            if (cls.empty())
                throw Infeasible("Z cannot be constructed: no safe choice left for separator " + std::to_string(i));
        }
        if (!violated) break;
        ++res.resolves;
    }
    return res;
}

}  // namespace strsan
