#include "newsignals/dataset/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "newsignals/sources/errors.hpp"

namespace newsignals::dataset {

std::vector<std::string> default_document_fields() {
    return {"id", "published_at", "title", "body", "metadata"};
}

void SignalsDataset::add_signal(core::Signal signal) {
    if (!signal.is_aligned() || signal.start() != metadata_.start ||
        signal.end() != metadata_.end) {
        throw std::invalid_argument("dataset: signal '" + signal.id() +
                                    "' does not cover [" + metadata_.start.to_string() + ", " +
                                    metadata_.end.to_string() + ")");
    }
    const std::string qid = signal.id();
    if (!signals_.emplace(qid, std::move(signal)).second) {
        throw std::invalid_argument("dataset: duplicate signal '" + qid + "'");
    }
}

const core::Signal& SignalsDataset::at(const std::string& qid) const {
    auto it = signals_.find(qid);
    if (it == signals_.end()) throw std::out_of_range("dataset: no signal '" + qid + "'");
    return it->second;
}

bool SignalsDataset::operator==(const SignalsDataset& other) const {
    const DatasetMetadata& a = metadata_;
    const DatasetMetadata& b = other.metadata_;
    return a.name == b.name && a.start == b.start && a.end == b.end &&
           a.tool_version == b.tool_version && a.document_fields == b.document_fields &&
           signals_ == other.signals_;
}

namespace {

std::string now_timestamp() {
    return core::format_timestamp(static_cast<std::int64_t>(std::time(nullptr)));
}

void emit_warning(const BuildOptions& options, std::mutex& mu, const std::string& message) {
    if (!options.warn) return;
    std::lock_guard lock(mu);
    options.warn(message);
}

std::vector<sources::EntityRecord> resolve_entities(const DatasetConfig& config,
                                                    const BuildSources& sources) {
    std::vector<sources::EntityRecord> records;
    if (config.entities.sparql_query_path) {
        if (!sources.sparql) {
            throw std::invalid_argument("dataset: entity list comes from SPARQL but no SPARQL "
                                        "client was provided");
        }
        std::ifstream in(*config.entities.sparql_query_path);
        if (!in) {
            throw std::runtime_error("dataset: cannot read SPARQL query file '" +
                                     config.entities.sparql_query_path->string() + "'");
        }
        std::ostringstream text;
        text << in.rdbuf();
        records = sources.sparql->run(text.str());
    } else {
        records = config.entities.inline_entities;
    }
    std::sort(records.begin(), records.end(),
              [](const auto& a, const auto& b) { return a.qid < b.qid; });
    records.erase(std::unique(records.begin(), records.end(),
                              [](const auto& a, const auto& b) { return a.qid == b.qid; }),
                  records.end());
    if (records.empty()) throw std::runtime_error("dataset: entity list is empty");
    return records;
}

bool wants_target(const DatasetConfig& config, TargetKind kind) {
    return std::find(config.targets.begin(), config.targets.end(), kind) != config.targets.end();
}

core::TimeSeries zero_series(const std::string& name, core::Tick start, core::Tick end) {
    return core::TimeSeries(name, start, std::vector<double>(static_cast<std::size_t>(end - start), 0.0));
}

core::Signal build_entity_signal(const DatasetConfig& config, const BuildSources& sources,
                                 const BuildOptions& options, const sources::EntityRecord& entity,
                                 std::mutex& warn_mu, std::mutex& news_mu) {
    std::map<std::string, std::string> params{{"entity_label", entity.label}};
    if (entity.wikipedia_title) params["wikipedia_title"] = *entity.wikipedia_title;
    core::Signal signal(entity.qid, entity.label, std::move(params));

    core::Feed stories("stories", config.start, config.end);
    const auto n_days = static_cast<std::size_t>(config.end - config.start);
    std::vector<double> volume(n_days, 0.0);
    {
        // News sources are not required to be thread-safe; fetches stay
        // deterministic regardless because sampling is keyed on (qid, day).
        std::lock_guard lock(news_mu);
        for (core::Tick t = config.start; t < config.end; ++t) {
            if (config.stories_per_day > 0) {
                for (auto& doc :
                     sources.news.fetch_stories({entity, t, config.stories_per_day})) {
                    stories.add(std::move(doc));
                }
            }
            volume[static_cast<std::size_t>(t - config.start)] =
                static_cast<double>(sources.news.story_count(entity.qid, t));
        }
    }
    signal.add_feed(std::move(stories));
    signal.add_series(core::TimeSeries("news_volume", config.start, std::move(volume)));

    if (wants_target(config, TargetKind::wikimedia_pageviews)) {
        const std::string series_name = to_string(TargetKind::wikimedia_pageviews);
        if (!entity.wikipedia_title) {
            emit_warning(options, warn_mu,
                         entity.qid + ": no wikipedia_title; " + series_name + " is all zeros");
            signal.add_series(zero_series(series_name, config.start, config.end));
        } else {
            try {
                std::vector<core::Tick> gaps;
                auto series = sources.pageviews->fetch(config.wikimedia_project,
                                                       *entity.wikipedia_title, config.start,
                                                       config.end, &gaps);
                if (!gaps.empty()) {
                    emit_warning(options, warn_mu,
                                 entity.qid + ": " + std::to_string(gaps.size()) +
                                     " day(s) missing from pageviews, zero-filled");
                }
                signal.add_series(std::move(series));
            } catch (const sources::SourceError& e) {
                if (options.strict) throw;
                emit_warning(options, warn_mu,
                             entity.qid + ": pageviews fetch failed (" + e.what() +
                                 "); series is all zeros");
                signal.add_series(zero_series(series_name, config.start, config.end));
            }
        }
    }
    return signal;
}

}  // namespace

SignalsDataset build_dataset(const DatasetConfig& config, const BuildSources& sources,
                             const BuildOptions& options) {
    if (config.start >= config.end) {
        throw std::invalid_argument("dataset: start must precede end");
    }
    if (wants_target(config, TargetKind::wikimedia_pageviews) && !sources.pageviews) {
        throw std::invalid_argument(
            "dataset: wikimedia_pageviews target requires a pageviews client");
    }
    const auto entities = resolve_entities(config, sources);

    DatasetMetadata metadata;
    metadata.name = config.name;
    metadata.start = config.start;
    metadata.end = config.end;
    metadata.built_at = options.built_at.empty() ? now_timestamp() : options.built_at;
    SignalsDataset dataset(std::move(metadata));

    std::vector<std::optional<core::Signal>> built(entities.size());
    std::mutex warn_mu;
    std::mutex news_mu;
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mu;

    const auto worker = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= entities.size()) return;
            {
                std::lock_guard lock(failure_mu);
                if (failure) return;
            }
            try {
                built[i] =
                    build_entity_signal(config, sources, options, entities[i], warn_mu, news_mu);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    const int jobs = std::max(1, options.jobs);
    const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), entities.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (auto& signal : built) dataset.add_signal(std::move(*signal));
    return dataset;
}

}  // namespace newsignals::dataset
