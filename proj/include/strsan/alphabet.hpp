#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "strsan/types.hpp"

namespace strsan {

enum class InputMode { Char, Token };

/// Raised for malformed input text; the message names line and column.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line, std::size_t column);
    std::size_t line;
    std::size_t column;
};

struct RawToken {
    std::string text;
    std::size_t line;    // 1-based
    std::size_t column;  // 1-based
};

/// Split text into tokens. Char mode yields one token per character and
/// ignores line breaks; token mode splits on whitespace.
std::vector<RawToken> tokenize(std::string_view text, InputMode mode);

/// Finite ordered alphabet. Codes 0..size()-1 follow the alphabet order:
/// byte order in char mode; in token mode numeric order when every token is
/// an integer, lexicographic order otherwise.
class Alphabet {
public:
    Alphabet() = default;

    /// Collects the distinct tokens of `text`. Throws SeparatorInInput if a
    /// token equals "#".
    static Alphabet from_text(std::string_view text, InputMode mode);
    static Alphabet from_letters(std::vector<std::string> letters, InputMode mode);

    std::size_t size() const noexcept { return letters_.size(); }
    InputMode mode() const noexcept { return mode_; }
    const std::vector<std::string>& letters() const noexcept { return letters_; }

    std::optional<Token> code(std::string_view token) const;
    const std::string& letter(Token t) const;

    /// Throws ParseError on unknown tokens and SeparatorInInput on "#"
    /// unless `allow_separator` is set.
    Sequence encode(std::string_view text, bool allow_separator = false) const;
    Sequence encode(const std::vector<RawToken>& tokens, bool allow_separator = false) const;

    /// Char mode concatenates letters; token mode joins them with spaces.
    std::string decode(TokenSpan seq) const;

private:
    InputMode mode_ = InputMode::Char;
    std::vector<std::string> letters_;
    std::unordered_map<std::string, Token> index_;
};

inline constexpr std::string_view kSeparatorText = "#";

}  // namespace strsan
