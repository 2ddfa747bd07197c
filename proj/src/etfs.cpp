#include "strsan/etfs.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace strsan {

// ---------------------------------------------------------------------------
// Expression
// ---------------------------------------------------------------------------

SanRegex build_regex(const SanitizationInstance& inst) {
    if (inst.I.empty()) throw NoNonSensitive("every length-k occurrence is sensitive");
    const std::size_t k = inst.k;
    TokenSpan w(inst.W);
    SanRegex e;
    e.k = k;
    e.sigma = inst.sigma;
    e.first = to_kmer(w.subspan(inst.I.front(), k));
    for (std::size_t i = 1; i < inst.I.size(); ++i) {
        auto prev = w.subspan(inst.I[i - 1], k);
        auto next = w.subspan(inst.I[i], k);
        if (std::equal(prev.begin() + 1, prev.end(), next.begin()))
            e.segments.emplace_back(MergeChoice{to_kmer(next.subspan(k - 1)), to_kmer(next)});
        else
            e.segments.emplace_back(Interleave{to_kmer(next)});
    }
    return e;
}

SanRegex fallback_regex(std::size_t k, std::size_t sigma) {
    SanRegex e;
    e.k = k;
    e.sigma = sigma;
    e.fallback = true;
    return e;
}

std::string SanRegex::describe(const Alphabet& alphabet) const {
    const std::string short_run = "Σ<" + std::to_string(k);
    if (fallback) return short_run + "(#" + short_run + ")*";
    auto lit = [&](const Kmer& s) { return alphabet.decode(s); };
    std::string out = "⊖" + lit(first);
    for (const auto& seg : segments) {
        if (const auto* m = std::get_if<MergeChoice>(&seg))
            out += "(" + lit(m->tail) + "|⊕" + lit(m->pattern) + ")";
        else
            out += "⊕" + lit(std::get<Interleave>(seg).pattern);
    }
    return out + "⊗";
}

std::size_t SanRegex::flattened_length() const {
    const std::size_t short_run = (k - 1) * (sigma + 1);
    const std::size_t filler = short_run + 1;  // one starred unit
    if (fallback) return short_run + 1 + short_run;
    std::size_t total = filler + first.size() + filler;
    for (const auto& seg : segments) {
        if (const auto* m = std::get_if<MergeChoice>(&seg))
            total += m->tail.size() + 1 + filler + m->pattern.size();
        else
            total += 1 + filler + std::get<Interleave>(seg).pattern.size();
    }
    return total;
}

std::string SanRegex::to_ecmascript(const std::string& letters) const {
    auto letter = [&](Token t) {
        char c = letters.at(t);
        std::string s;
        if (!std::isalnum(static_cast<unsigned char>(c))) s.push_back('\\');
        s.push_back(c);
        return s;
    };
    std::string cls = "[";
    for (std::size_t a = 0; a < sigma; ++a) cls += letter(static_cast<Token>(a));
    cls += "]";
    std::string short_run;
    for (std::size_t i = 0; i + 1 < k; ++i) short_run += cls + "?";
    auto lit = [&](const Kmer& s) {
        std::string out;
        for (Token t : s) out += letter(t);
        return out;
    };
    const std::string lead = "(?:" + short_run + "#)*";
    const std::string sep = "#" + lead;
    const std::string trail = "(?:#" + short_run + ")*";
    if (fallback) return short_run + trail;
    std::string out = lead + lit(first);
    for (const auto& seg : segments) {
        if (const auto* m = std::get_if<MergeChoice>(&seg))
            out += "(?:" + lit(m->tail) + "|" + sep + lit(m->pattern) + ")";
        else
            out += sep + lit(std::get<Interleave>(seg).pattern);
    }
    return out + trail;
}

// ---------------------------------------------------------------------------
// Automaton
// ---------------------------------------------------------------------------

namespace {

class Builder {
public:
    explicit Builder(const SanRegex& e) : e_(e) { a_.sigma = e.sigma; }

    Automaton build() {
        a_.start = fresh();
        std::uint32_t cur = a_.start;
        if (e_.fallback) {
            cur = short_run(cur);
            trailing_star(cur);
        } else {
            leading_star(cur);
            cur = literal(cur, e_.first);
            for (const auto& seg : e_.segments) {
                if (const auto* m = std::get_if<MergeChoice>(&seg)) {
                    if (m->tail.size() != 1) throw std::logic_error("merge tail must be one letter");
                    const std::uint32_t u = cur;
                    cur = fresh_block(u, m->pattern);
                    edge(u, cur, Automaton::Label::Lit, m->tail.front());
                } else {
                    cur = fresh_block(cur, std::get<Interleave>(seg).pattern);
                }
            }
            trailing_star(cur);
        }
        a_.accept = cur;
        index_incoming();
        return std::move(a_);
    }

private:
    std::uint32_t fresh() { return a_.states++; }

    void edge(std::uint32_t from, std::uint32_t to, Automaton::Label l, Token lit = 0) {
        a_.edges.push_back({from, to, l, lit});
    }

    // Up to k-1 letters.
    std::uint32_t short_run(std::uint32_t from) {
        std::uint32_t cur = from;
        for (std::size_t i = 0; i + 1 < e_.k; ++i) {
            std::uint32_t nxt = fresh();
            edge(cur, nxt, Automaton::Label::Any);
            edge(cur, nxt, Automaton::Label::Eps);
            cur = nxt;
        }
        return cur;
    }

    // (short run, separator)* looping on `head`.
    void leading_star(std::uint32_t head) {
        std::uint32_t s = short_run(head);
        std::uint32_t e = fresh();
        edge(s, e, Automaton::Label::Hash);
        edge(e, head, Automaton::Label::Eps);
    }

    // (separator, short run)* looping on `head`.
    void trailing_star(std::uint32_t head) {
        std::uint32_t a = fresh();
        edge(head, a, Automaton::Label::Hash);
        std::uint32_t s = short_run(a);
        edge(s, head, Automaton::Label::Eps);
    }

    std::uint32_t literal(std::uint32_t from, const Kmer& s) {
        std::uint32_t cur = from;
        for (Token t : s) {
            std::uint32_t nxt = fresh();
            edge(cur, nxt, Automaton::Label::Lit, t);
            cur = nxt;
        }
        return cur;
    }

    // Separator, filler, then the pattern.
    std::uint32_t fresh_block(std::uint32_t from, const Kmer& pattern) {
        std::uint32_t v = fresh();
        edge(from, v, Automaton::Label::Hash);
        leading_star(v);
        return literal(v, pattern);
    }

    void index_incoming() {
        a_.in_begin.assign(a_.states + 1, 0);
        for (const auto& e : a_.edges) ++a_.in_begin[e.to + 1];
        for (std::uint32_t s = 0; s < a_.states; ++s) a_.in_begin[s + 1] += a_.in_begin[s];
        a_.in_edges.assign(a_.edges.size(), 0);
        std::vector<std::uint32_t> fill(a_.in_begin.begin(), a_.in_begin.end() - 1);
        for (std::uint32_t i = 0; i < a_.edges.size(); ++i) a_.in_edges[fill[a_.edges[i].to]++] = i;
    }

    const SanRegex& e_;
    Automaton a_;
};

bool accepts(const Automaton& a, Automaton::Label l, Token lit, Token t) {
    switch (l) {
        case Automaton::Label::Any: return !is_separator(t) && t < a.sigma;
        case Automaton::Label::Hash: return is_separator(t);
        case Automaton::Label::Lit: return t == lit;
        case Automaton::Label::Eps: return false;
    }
    return false;
}

}  // namespace

Automaton compile(const SanRegex& e) { return Builder(e).build(); }

bool matches(const Automaton& a, TokenSpan T) {
    std::vector<std::vector<std::uint32_t>> out(a.states);
    for (std::uint32_t i = 0; i < a.edges.size(); ++i) out[a.edges[i].from].push_back(i);
    std::vector<char> on(a.states, 0);
    std::vector<std::uint32_t> cur;
    auto add = [&](std::vector<std::uint32_t>& set, std::vector<char>& mark, std::uint32_t s) {
        std::vector<std::uint32_t> stack{s};
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            if (mark[v]) continue;
            mark[v] = 1;
            set.push_back(v);
            for (std::uint32_t ei : out[v])
                if (a.edges[ei].label == Automaton::Label::Eps) stack.push_back(a.edges[ei].to);
        }
    };
    add(cur, on, a.start);
    for (Token t : T) {
        std::vector<std::uint32_t> next;
        std::vector<char> mark(a.states, 0);
        for (std::uint32_t v : cur)
            for (std::uint32_t ei : out[v]) {
                const auto& e = a.edges[ei];
                if (accepts(a, e.label, e.lit, t)) add(next, mark, e.to);
            }
        cur.swap(next);
        on.swap(mark);
        if (cur.empty()) return false;
    }
    return on[a.accept] != 0;
}

bool matches(const SanRegex& e, TokenSpan T) { return matches(compile(e), T); }

// ---------------------------------------------------------------------------
// Edit-distance matching
// ---------------------------------------------------------------------------

namespace {

// Cost = edits in the high half, separators emitted in the low half.
using Cost = std::uint64_t;
constexpr Cost kInf = std::numeric_limits<Cost>::max();
constexpr Cost kEdit = Cost{1} << 32;

enum Op : std::uint8_t { kStart = 0, kDiag = 1, kSame = 2, kDel = 3 };

inline std::uint8_t pack(Op op, std::uint32_t slot) { return static_cast<std::uint8_t>(op | (slot << 2)); }

inline Cost add(Cost a, Cost b) { return a == kInf ? kInf : a + b; }

Cost emit_cost(Automaton::Label l) { return l == Automaton::Label::Hash ? kEdit + 1 : kEdit; }

}  // namespace

MatchResult approx_regex_match(TokenSpan W, const SanRegex& expr) {
    const Automaton a = compile(expr);
    const std::size_t n = W.size(), m = a.states;
    for (std::uint32_t s = 0; s < m; ++s)
        if (a.in_begin[s + 1] - a.in_begin[s] >= 64) throw std::logic_error("state in-degree too large");

    std::vector<Cost> prev(m, kInf), cur(m, kInf);
    std::vector<std::uint8_t> trace((n + 1) * m, kStart);

    auto same_column = [&](std::size_t col) {
        std::uint8_t* tb = trace.data() + col * m;
        for (int sweep = 0; sweep < 2; ++sweep)
            for (std::uint32_t s = 0; s < m; ++s)
                for (std::uint32_t slot = 0, i = a.in_begin[s]; i < a.in_begin[s + 1]; ++i, ++slot) {
                    const auto& e = a.edges[a.in_edges[i]];
                    Cost c = add(cur[e.from], e.label == Automaton::Label::Eps ? 0 : emit_cost(e.label));
                    if (c < cur[s]) {
                        cur[s] = c;
                        tb[s] = pack(kSame, slot);
                    }
                }
    };

    cur[a.start] = 0;
    same_column(0);
    for (std::size_t col = 1; col <= n; ++col) {
        prev.swap(cur);
        std::fill(cur.begin(), cur.end(), kInf);
        std::uint8_t* tb = trace.data() + col * m;
        const Token x = W[col - 1];
        for (std::uint32_t s = 0; s < m; ++s) {
            Cost best = kInf;
            std::uint8_t how = kStart;
            for (std::uint32_t slot = 0, i = a.in_begin[s]; i < a.in_begin[s + 1]; ++i, ++slot) {
                const auto& e = a.edges[a.in_edges[i]];
                if (e.label == Automaton::Label::Eps) continue;
                const bool hit = accepts(a, e.label, e.lit, x);
                Cost step = hit ? 0 : emit_cost(e.label);
                if (e.label == Automaton::Label::Hash) step = hit ? 1 : kEdit + 1;
                Cost c = add(prev[e.from], step);
                if (c < best) {
                    best = c;
                    how = pack(kDiag, slot);
                }
            }
            Cost del = add(prev[s], kEdit);
            if (del < best) {
                best = del;
                how = pack(kDel, 0);
            }
            cur[s] = best;
            tb[s] = how;
        }
        same_column(col);
    }

    if (cur[a.accept] == kInf) throw std::logic_error("expression accepts no string");
    MatchResult res;
    res.distance = static_cast<std::size_t>(cur[a.accept] >> 32);
    res.stats = {a.states, a.edges.size(), (n + 1) * m};

    Sequence rev;
    std::size_t col = n;
    std::uint32_t s = a.accept;
    for (;;) {
        std::uint8_t t = trace[col * m + s];
        Op op = static_cast<Op>(t & 3);
        std::uint32_t slot = t >> 2;
        if (op == kStart) break;
        if (op == kDel) {
            --col;
            continue;
        }
        const auto& e = a.edges[a.in_edges[a.in_begin[s] + slot]];
        if (op == kDiag) {
            const Token x = W[col - 1];
            if (e.label == Automaton::Label::Any) rev.push_back(x);
            else if (e.label == Automaton::Label::Hash) rev.push_back(kSeparator);
            else rev.push_back(e.lit);
            --col;
        } else if (e.label != Automaton::Label::Eps) {
            if (e.label == Automaton::Label::Any) rev.push_back(0);
            else if (e.label == Automaton::Label::Hash) rev.push_back(kSeparator);
            else rev.push_back(e.lit);
        }
        s = e.from;
    }
    if (col != 0 || s != a.start) throw std::logic_error("traceback did not reach the start");
    res.T.assign(rev.rbegin(), rev.rend());
    return res;
}

MatchResult etfs_sanitize(const SanitizationInstance& inst) {
    SanRegex e = inst.I.empty() ? fallback_regex(inst.k, inst.sigma) : build_regex(inst);
    return approx_regex_match(inst.W, e);
}

}  // namespace strsan
