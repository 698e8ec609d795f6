#include "newsignals/summarize/sentences.hpp"

#include <cctype>
#include <unordered_set>

#include "newsignals/util/text.hpp"

namespace newsignals::summarize {

const std::vector<std::string>& default_abbreviations() {
    static const std::vector<std::string> kList = {
        "Mr.",   "Mrs.",  "Ms.",   "Dr.",   "Prof.", "Sr.",   "Jr.",   "St.",    "Rep.",
        "Sen.",  "Gov.",  "Gen.",  "Col.",  "Lt.",   "Sgt.",  "Capt.", "Adm.",   "Rev.",
        "Hon.",  "Pres.", "Sec.",  "U.S.",  "U.K.",  "U.N.",  "E.U.",  "D.C.",   "L.A.",
        "N.Y.",  "Inc.",  "Corp.", "Co.",   "Ltd.",  "LLC.",  "Plc.",  "Bros.",  "No.",
        "Nos.",  "vs.",   "v.",    "etc.",  "e.g.",  "i.e.",  "cf.",   "a.m.",   "p.m.",
        "Jan.",  "Feb.",  "Mar.",  "Apr.",  "Jun.",  "Jul.",  "Aug.",  "Sep.",   "Sept.",
        "Oct.",  "Nov.",  "Dec.",  "Mon.",  "Tue.",  "Wed.",  "Thu.",  "Fri.",   "Sat.",
        "Sun.",  "Ave.",  "Blvd.", "Rd.",   "Mt.",   "Ft.",   "est.",  "approx.", "dept.",
        "govt.",
    };
    return kList;
}

namespace {

bool is_terminal(char c) { return c == '.' || c == '?' || c == '!'; }

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

// Maximal non-whitespace run ending at (and including) the period, with any
// leading punctuation such as '(' or '"' stripped.
std::string token_ending_at(std::string_view text, std::size_t sentence_begin, std::size_t dot) {
    std::size_t start = dot;
    while (start > sentence_begin && !is_space(text[start - 1])) --start;
    while (start < dot && !std::isalnum(static_cast<unsigned char>(text[start]))) ++start;
    return std::string(text.substr(start, dot + 1 - start));
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text, const SentenceSplitOptions& options,
                                         const std::vector<std::string>& abbreviations) {
    const std::unordered_set<std::string> guarded(abbreviations.begin(), abbreviations.end());
    std::vector<std::string> out;
    std::size_t begin = 0;
    const auto flush = [&](std::size_t end) {
        std::string s = util::trim(text.substr(begin, end - begin));
        if (!s.empty()) out.push_back(std::move(s));
    };

    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_terminal(text[i])) {
            ++i;
            continue;
        }
        std::size_t run_end = i + 1;  // swallow "?!", "...", etc.
        while (run_end < text.size() && is_terminal(text[run_end])) ++run_end;
        std::size_t next = run_end;
        while (next < text.size() && is_space(text[next])) ++next;
        bool boundary = next > run_end && next < text.size() && is_upper(text[next]);
        if (boundary && text[i] == '.' && run_end == i + 1) {
            const std::string token = token_ending_at(text, begin, i);
            if (guarded.count(token) != 0) {
                boundary = false;
            } else if (options.guard_single_letter && token.size() == 2 && is_alpha(token[0])) {
                boundary = false;
            }
        }
        if (boundary) {
            flush(run_end);
            begin = next;
        }
        i = run_end;
    }
    flush(text.size());
    return out;
}

}  // namespace newsignals::summarize
