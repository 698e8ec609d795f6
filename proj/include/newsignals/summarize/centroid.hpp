#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "newsignals/core/document.hpp"
#include "newsignals/summarize/sentences.hpp"

namespace newsignals::summarize {

// One sentence as a sparse, L2-normalized tf-idf vector (all-zero when the
// sentence has no tokens).
struct SentenceVector {
    std::size_t sentence_index = 0;
    std::map<std::string, double> weights;
};

// tf = raw in-sentence count; idf = ln((N+1)/(df+1)) + 1 over the N sentences.
std::vector<SentenceVector> tfidf_vectors(const std::vector<std::string>& sentences);

double cosine(const SentenceVector& a, const SentenceVector& b);

struct CentroidParams {
    std::size_t k = 5;
    double redundancy_threshold = 0.6;
    SentenceSplitOptions split;
};

// Greedy centroid selection: repeatedly take the sentence most similar to
// the (normalized mean) centroid, skipping candidates whose cosine to any
// already-selected sentence reaches the redundancy threshold. Ties resolve
// to the lower sentence index. Returns selection order.
std::vector<std::size_t> centroid_select_indices(const std::vector<std::string>& sentences,
                                                 const CentroidParams& params = {});

// Splits each document's title and body into sentences (document order) and
// selects from the pooled collection. Throws when no sentences survive.
std::vector<std::string> centroid_select(const std::vector<core::Document>& docs,
                                         const CentroidParams& params = {});

}  // namespace newsignals::summarize
