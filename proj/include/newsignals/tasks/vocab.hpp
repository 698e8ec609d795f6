#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "newsignals/tasks/examples.hpp"

namespace newsignals::tasks {

// The fixed 179-word English stopword list; also shipped (one word per
// line, same order) as data/stopwords_en.txt.
const std::vector<std::string>& english_stopwords();

// Task tokenization: lowercase alphanumeric runs, minus tokens shorter than
// two characters and stopwords.
std::vector<std::string> task_tokens(std::string_view text);

// Top-N tokens by document frequency, ties by lexicographic order.
class Vocabulary {
public:
    static constexpr std::size_t kDefaultSize = 10000;

    static Vocabulary build(const std::vector<std::string>& texts,
                            std::size_t size = kDefaultSize);
    static Vocabulary from_tokens(std::vector<std::string> tokens);

    const std::vector<std::string>& tokens() const { return tokens_; }
    std::size_t size() const { return tokens_.size(); }
    std::optional<std::size_t> index_of(std::string_view token) const;

    bool operator==(const Vocabulary&) const = default;

private:
    std::vector<std::string> tokens_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

// Token-indicator features: index i is on iff vocabulary token i occurs.
struct SparseBinaryVector {
    std::vector<std::size_t> on_indices;  // sorted, unique

    bool operator==(const SparseBinaryVector&) const = default;
};

SparseBinaryVector featurize(std::string_view text, const Vocabulary& vocab);

// Provenance of a vocabulary build, recorded in split manifests so leakage
// checks can audit that only training ticks contributed.
struct VocabAudit {
    std::size_t n_texts = 0;
    core::Tick min_tick;
    core::Tick max_tick;
};

Vocabulary build_vocab(const std::vector<TaskExample>& train_examples,
                       std::size_t size = Vocabulary::kDefaultSize, VocabAudit* audit = nullptr);

}  // namespace newsignals::tasks
