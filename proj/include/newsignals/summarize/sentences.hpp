#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace newsignals::summarize {

struct SentenceSplitOptions {
    // Treat "A." style single-letter initials as non-terminal.
    bool guard_single_letter = true;
};

// Abbreviations whose trailing period never ends a sentence ("Mr.", "U.S.",
// "Inc.", ...). The same list ships as data/abbreviations_en.txt.
const std::vector<std::string>& default_abbreviations();

// Rule-based splitting: a sentence ends at `.`, `?` or `!` followed by
// whitespace and a capital letter. Empty text yields an empty list.
std::vector<std::string> split_sentences(
    std::string_view text, const SentenceSplitOptions& options = {},
    const std::vector<std::string>& abbreviations = default_abbreviations());

}  // namespace newsignals::summarize
