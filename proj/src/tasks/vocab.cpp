#include "newsignals/tasks/vocab.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "newsignals/util/text.hpp"

namespace newsignals::tasks {

const std::vector<std::string>& english_stopwords() {
    static const std::vector<std::string> kList = {
        "i",         "me",        "my",       "myself",  "we",        "our",       "ours",
        "ourselves", "you",       "you're",   "you've",  "you'll",    "you'd",     "your",
        "yours",     "yourself",  "yourselves", "he",    "him",       "his",       "himself",
        "she",       "she's",     "her",      "hers",    "herself",   "it",        "it's",
        "its",       "itself",    "they",     "them",    "their",     "theirs",    "themselves",
        "what",      "which",     "who",      "whom",    "this",      "that",      "that'll",
        "these",     "those",     "am",       "is",      "are",       "was",       "were",
        "be",        "been",      "being",    "have",    "has",       "had",       "having",
        "do",        "does",      "did",      "doing",   "a",         "an",        "the",
        "and",       "but",       "if",       "or",      "because",   "as",        "until",
        "while",     "of",        "at",       "by",      "for",       "with",      "about",
        "against",   "between",   "into",     "through", "during",    "before",    "after",
        "above",     "below",     "to",       "from",    "up",        "down",      "in",
        "out",       "on",        "off",      "over",    "under",     "again",     "further",
        "then",      "once",      "here",     "there",   "when",      "where",     "why",
        "how",       "all",       "any",      "both",    "each",      "few",       "more",
        "most",      "other",     "some",     "such",    "no",        "nor",       "not",
        "only",      "own",       "same",     "so",      "than",      "too",       "very",
        "s",         "t",         "can",      "will",    "just",      "don",       "don't",
        "should",    "should've", "now",      "d",       "ll",        "m",         "o",
        "re",        "ve",        "y",        "ain",     "aren",      "aren't",    "couldn",
        "couldn't",  "didn",      "didn't",   "doesn",   "doesn't",   "hadn",      "hadn't",
        "hasn",      "hasn't",    "haven",    "haven't", "isn",       "isn't",     "ma",
        "mightn",    "mightn't",  "mustn",    "mustn't", "needn",     "needn't",   "shan",
        "shan't",    "shouldn",   "shouldn't", "wasn",   "wasn't",    "weren",     "weren't",
        "won",       "won't",     "wouldn",   "wouldn't",
    };
    return kList;
}

namespace {

const std::unordered_set<std::string>& stopword_set() {
    static const std::unordered_set<std::string> kSet(english_stopwords().begin(),
                                                      english_stopwords().end());
    return kSet;
}

}  // namespace

std::vector<std::string> task_tokens(std::string_view text) {
    std::vector<std::string> out;
    for (auto& token : util::tokenize(text)) {
        if (token.size() < 2) continue;
        if (stopword_set().count(token) != 0) continue;
        out.push_back(std::move(token));
    }
    return out;
}

Vocabulary Vocabulary::build(const std::vector<std::string>& texts, std::size_t size) {
    if (texts.empty()) throw std::invalid_argument("build_vocab: empty corpus");
    std::map<std::string, std::size_t> df;
    for (const auto& text : texts) {
        std::unordered_set<std::string> seen;
        for (auto& token : task_tokens(text)) seen.insert(std::move(token));
        for (const auto& token : seen) df[token] += 1;
    }
    std::vector<std::pair<std::string, std::size_t>> ranked(df.begin(), df.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > size) ranked.resize(size);

    std::vector<std::string> tokens;
    tokens.reserve(ranked.size());
    for (auto& [token, count] : ranked) tokens.push_back(std::move(token));
    return from_tokens(std::move(tokens));
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
    Vocabulary vocab;
    vocab.tokens_ = std::move(tokens);
    for (std::size_t i = 0; i < vocab.tokens_.size(); ++i) {
        if (!vocab.index_.emplace(vocab.tokens_[i], i).second) {
            throw std::invalid_argument("vocabulary: duplicate token '" + vocab.tokens_[i] + "'");
        }
    }
    return vocab;
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view token) const {
    const auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

SparseBinaryVector featurize(std::string_view text, const Vocabulary& vocab) {
    SparseBinaryVector vec;
    for (const auto& token : task_tokens(text)) {
        if (const auto idx = vocab.index_of(token)) vec.on_indices.push_back(*idx);
    }
    std::sort(vec.on_indices.begin(), vec.on_indices.end());
    vec.on_indices.erase(std::unique(vec.on_indices.begin(), vec.on_indices.end()),
                         vec.on_indices.end());
    return vec;
}

Vocabulary build_vocab(const std::vector<TaskExample>& train_examples, std::size_t size,
                       VocabAudit* audit) {
    std::vector<std::string> texts;
    texts.reserve(train_examples.size());
    for (const auto& ex : train_examples) texts.push_back(ex.text);
    if (audit) {
        audit->n_texts = train_examples.size();
        if (!train_examples.empty()) {
            audit->min_tick = audit->max_tick = train_examples.front().tick;
            for (const auto& ex : train_examples) {
                audit->min_tick = std::min(audit->min_tick, ex.tick);
                audit->max_tick = std::max(audit->max_tick, ex.tick);
            }
        }
    }
    return Vocabulary::build(texts, size);
}

}  // namespace newsignals::tasks
