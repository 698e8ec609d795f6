#include "newsignals/summarize/centroid.hpp"

#include <cmath>
#include <stdexcept>

#include "newsignals/util/text.hpp"

namespace newsignals::summarize {

namespace {

void normalize(std::map<std::string, double>& weights) {
    double sum_sq = 0.0;
    for (const auto& [term, w] : weights) sum_sq += w * w;
    if (sum_sq == 0.0) return;
    const double norm = std::sqrt(sum_sq);
    for (auto& [term, w] : weights) w /= norm;
}

}  // namespace

std::vector<SentenceVector> tfidf_vectors(const std::vector<std::string>& sentences) {
    const std::size_t n = sentences.size();
    std::vector<std::map<std::string, double>> tf(n);
    std::map<std::string, std::size_t> df;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& token : util::tokenize(sentences[i])) tf[i][token] += 1.0;
        for (const auto& [term, count] : tf[i]) df[term] += 1;
    }
    std::vector<SentenceVector> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].sentence_index = i;
        out[i].weights = std::move(tf[i]);
        for (auto& [term, w] : out[i].weights) {
            w *= std::log(static_cast<double>(n + 1) / static_cast<double>(df[term] + 1)) + 1.0;
        }
        normalize(out[i].weights);
    }
    return out;
}

double cosine(const SentenceVector& a, const SentenceVector& b) {
    // Both sides are unit length (or zero), so the dot product suffices.
    const auto& small = a.weights.size() <= b.weights.size() ? a.weights : b.weights;
    const auto& large = a.weights.size() <= b.weights.size() ? b.weights : a.weights;
    double dot = 0.0;
    for (const auto& [term, w] : small) {
        if (auto it = large.find(term); it != large.end()) dot += w * it->second;
    }
    return dot;
}

std::vector<std::size_t> centroid_select_indices(const std::vector<std::string>& sentences,
                                                 const CentroidParams& params) {
    if (sentences.empty()) throw std::invalid_argument("centroid_select: no sentences");
    const auto vectors = tfidf_vectors(sentences);

    SentenceVector centroid;
    for (const auto& v : vectors) {
        for (const auto& [term, w] : v.weights) centroid.weights[term] += w;
    }
    for (auto& [term, w] : centroid.weights) w /= static_cast<double>(vectors.size());
    normalize(centroid.weights);

    std::vector<std::size_t> selected;
    std::vector<bool> used(vectors.size(), false);
    while (selected.size() < params.k) {
        double best_score = -1.0;
        std::size_t best = vectors.size();
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            if (used[i]) continue;
            bool redundant = false;
            for (std::size_t j : selected) {
                if (cosine(vectors[i], vectors[j]) >= params.redundancy_threshold) {
                    redundant = true;
                    break;
                }
            }
            if (redundant) continue;
            const double score = cosine(centroid, vectors[i]);
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        if (best == vectors.size()) break;  // nothing eligible remains
        used[best] = true;
        selected.push_back(best);
    }
    return selected;
}

std::vector<std::string> centroid_select(const std::vector<core::Document>& docs,
                                         const CentroidParams& params) {
    std::vector<std::string> sentences;
    for (const auto& doc : docs) {
        for (auto& s : split_sentences(doc.title, params.split)) sentences.push_back(std::move(s));
        if (doc.body) {
            for (auto& s : split_sentences(*doc.body, params.split)) {
                sentences.push_back(std::move(s));
            }
        }
    }
    if (sentences.empty()) {
        throw std::invalid_argument("centroid_select: documents contain no sentences");
    }
    std::vector<std::string> out;
    for (std::size_t i : centroid_select_indices(sentences, params)) {
        out.push_back(sentences[i]);
    }
    return out;
}

}  // namespace newsignals::summarize
