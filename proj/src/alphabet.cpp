#include "strsan/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace strsan {

ParseError::ParseError(const std::string& what, std::size_t line_, std::size_t column_)
    : std::runtime_error(what + " at line " + std::to_string(line_) + ", column " +
                         std::to_string(column_)),
      line(line_),
      column(column_) {}

std::vector<RawToken> tokenize(std::string_view text, InputMode mode) {
    std::vector<RawToken> out;
    std::size_t line = 1, column = 1;
    if (mode == InputMode::Char) {
        out.reserve(text.size());
        for (char ch : text) {
            if (ch == '\n') {
                ++line;
                column = 1;
                continue;
            }
            if (ch != '\r') out.push_back({std::string(1, ch), line, column});
            ++column;
        }
        return out;
    }
    std::size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '\n') {
            ++line;
            column = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++column;
            ++i;
            continue;
        }
        std::size_t start = i, start_col = column;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            ++column;
        }
        out.push_back({std::string(text.substr(start, i - start)), line, start_col});
    }
    return out;
}

namespace {

bool parse_integer(const std::string& s, long long& value) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Alphabet Alphabet::from_letters(std::vector<std::string> letters, InputMode mode) {
    Alphabet a;
    a.mode_ = mode;
    for (const auto& l : letters) {
        if (l == kSeparatorText) throw SeparatorInInput("alphabet may not contain \"#\"");
        if (l.empty()) throw std::invalid_argument("alphabet letters must be non-empty");
        if (!a.index_.emplace(l, static_cast<Token>(a.letters_.size())).second)
            throw std::invalid_argument("duplicate alphabet letter \"" + l + "\"");
        a.letters_.push_back(l);
    }
    return a;
}

Alphabet Alphabet::from_text(std::string_view text, InputMode mode) {
    std::set<std::string> distinct;
    for (auto& tok : tokenize(text, mode)) {
        if (tok.text == kSeparatorText)
            throw SeparatorInInput("input contains the reserved separator \"#\" at line " +
                                   std::to_string(tok.line) + ", column " +
                                   std::to_string(tok.column));
        distinct.insert(std::move(tok.text));
    }
    std::vector<std::string> letters(distinct.begin(), distinct.end());
    if (mode == InputMode::Token) {
        std::vector<long long> values(letters.size());
        bool numeric = true;
        for (std::size_t i = 0; i < letters.size() && numeric; ++i)
            numeric = parse_integer(letters[i], values[i]);
        if (numeric) {
            std::vector<std::size_t> order(letters.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
            std::vector<std::string> sorted;
            sorted.reserve(letters.size());
            for (std::size_t i : order) sorted.push_back(letters[i]);
            letters = std::move(sorted);
        }
    }
    return from_letters(std::move(letters), mode);
}

std::optional<Token> Alphabet::code(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const std::string& Alphabet::letter(Token t) const {
    static const std::string sep(kSeparatorText);
    if (is_separator(t)) return sep;
    return letters_.at(t);
}

Sequence Alphabet::encode(const std::vector<RawToken>& tokens, bool allow_separator) const {
    Sequence out;
    out.reserve(tokens.size());
    for (const auto& tok : tokens) {
        if (tok.text == kSeparatorText) {
            if (!allow_separator)
                throw SeparatorInInput("input contains the reserved separator \"#\" at line " +
                                       std::to_string(tok.line) + ", column " +
                                       std::to_string(tok.column));
            out.push_back(kSeparator);
            continue;
        }
        auto c = code(tok.text);
        if (!c) throw ParseError("token \"" + tok.text + "\" is not in the alphabet", tok.line,
                                 tok.column);
        out.push_back(*c);
    }
    return out;
}

Sequence Alphabet::encode(std::string_view text, bool allow_separator) const {
    return encode(tokenize(text, mode_), allow_separator);
}

std::string Alphabet::decode(TokenSpan seq) const {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (mode_ == InputMode::Token && i > 0) out.push_back(' ');
        out += letter(seq[i]);
    }
    return out;
}

}  // namespace strsan
