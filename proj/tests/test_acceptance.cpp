// End-to-end acceptance checks. Each test case prints one summary line so a
// plain run of this binary doubles as a release checklist.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "helpers.hpp"
#include "newsignals/anomaly/anomaly.hpp"
#include "newsignals/dataset/archive.hpp"
#include "newsignals/dataset/config.hpp"
#include "newsignals/dataset/dataset.hpp"
#include "newsignals/dataset/tar_gz.hpp"
#include "newsignals/sources/news_source.hpp"
#include "newsignals/sources/pageviews.hpp"
#include "newsignals/sources/retry.hpp"
#include "newsignals/sources/sparql.hpp"
#include "newsignals/summarize/centroid.hpp"
#include "newsignals/tasks/baselines.hpp"
#include "newsignals/tasks/examples.hpp"
#include "newsignals/tasks/forest.hpp"
#include "newsignals/tasks/splits.hpp"
#include "newsignals/tasks/vocab.hpp"
#include "newsignals/util/rng.hpp"
#include "newsignals/util/text.hpp"

using namespace newsignals;
using nlohmann::json;

namespace {

const std::filesystem::path kFixtures = NS_FIXTURES_DIR;

// Collects pass/fail across a criterion's checks and prints one line.
class Criterion {
public:
    Criterion(int number, std::string summary, double limit_seconds)
        : number_(number),
          summary_(std::move(summary)),
          limit_seconds_(limit_seconds),
          t0_(std::chrono::steady_clock::now()) {}

    void note(bool ok) { ok_ = ok_ && ok; }

    void finish() {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
        if (limit_seconds_ > 0.0) {
            const bool in_time = seconds < limit_seconds_;
            CHECK_MESSAGE(in_time, "runtime limit exceeded");
            ok_ = ok_ && in_time;
        }
        std::printf("[criterion %d] %s: %s (%.2fs)\n", number_, summary_.c_str(),
                    ok_ ? "PASS" : "FAIL", seconds);
        std::fflush(stdout);
    }

private:
    int number_;
    std::string summary_;
    double limit_seconds_;
    bool ok_ = true;
    std::chrono::steady_clock::time_point t0_;
};

#define ACC(criterion, ...)                          \
    do {                                             \
        const bool acc_ok = ((__VA_ARGS__));         \
        CHECK_MESSAGE(acc_ok, #__VA_ARGS__);         \
        (criterion).note(acc_ok);                    \
    } while (0)

core::Tick T(int day) { return core::Tick::from_day_number(day); }

tasks::TaskExample example(std::string qid, core::Tick tick, std::string text, int label) {
    tasks::TaskExample ex;
    ex.qid = std::move(qid);
    ex.tick = tick;
    ex.text = std::move(text);
    ex.label = label;
    ex.target_name = "news_volume";
    return ex;
}

struct FeatureTask {
    std::vector<tasks::SparseBinaryVector> X;
    std::vector<int> y;
    std::size_t n_features;
};

// Positive class == "feature 0 present"; the rest is independent noise.
FeatureTask rule_corpus(std::size_t n, std::size_t n_features, double base_rate,
                        std::uint64_t seed) {
    util::SplitMix64 rng(seed);
    FeatureTask task;
    task.n_features = n_features;
    for (std::size_t i = 0; i < n; ++i) {
        tasks::SparseBinaryVector x;
        for (std::size_t f = 1; f < n_features; ++f) {
            if (rng.next_bernoulli(0.2)) x.on_indices.push_back(f);
        }
        const bool positive = rng.next_bernoulli(base_rate);
        if (positive) x.on_indices.insert(x.on_indices.begin(), 0);
        task.X.push_back(std::move(x));
        task.y.push_back(positive ? 1 : 0);
    }
    return task;
}

// Text corpus where ten trigger tokens deterministically mark positive days.
std::pair<std::vector<tasks::TaskExample>, std::vector<int>> trigger_corpus(
    std::size_t n, std::uint64_t seed) {
    std::vector<std::string> triggers;
    for (int i = 0; i < 10; ++i) triggers.push_back("alerttoken" + std::to_string(i));
    std::vector<std::string> filler;
    for (int i = 0; i < 40; ++i) filler.push_back("filler" + std::to_string(i));

    util::SplitMix64 rng(seed);
    std::vector<tasks::TaskExample> examples;
    std::vector<int> gold;
    for (std::size_t i = 0; i < n; ++i) {
        std::string text;
        const std::size_t words = 5 + rng.next_below(5);
        for (std::size_t w = 0; w < words; ++w) {
            if (w > 0) text += ' ';
            text += filler[rng.next_below(filler.size())];
        }
        const bool positive = rng.next_bernoulli(0.3);
        if (positive) {
            const std::size_t extra = 1 + rng.next_below(3);
            for (std::size_t w = 0; w < extra; ++w) {
                text += ' ';
                text += triggers[rng.next_below(triggers.size())];
            }
        }
        examples.push_back(example("Q1", T(static_cast<int>(i)), text, positive ? 1 : 0));
        gold.push_back(positive ? 1 : 0);
    }
    return {examples, gold};
}

// Independent dense recomputation of the first centroid pick, accumulating
// in token-sorted order like the library does.
std::size_t brute_first_pick(const std::vector<std::string>& sentences) {
    std::vector<std::map<std::string, double>> tf(sentences.size());
    std::map<std::string, double> df;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        for (const auto& t : util::tokenize(sentences[i])) tf[i][t] += 1.0;
        for (const auto& [t, c] : tf[i]) df[t] += 1.0;
    }
    const double n = static_cast<double>(sentences.size());
    for (auto& weights : tf) {
        double sum_sq = 0.0;
        for (auto& [t, w] : weights) {
            w *= std::log((n + 1.0) / (df[t] + 1.0)) + 1.0;
            sum_sq += w * w;
        }
        if (sum_sq == 0.0) continue;
        const double norm = std::sqrt(sum_sq);
        for (auto& [t, w] : weights) w /= norm;
    }
    std::map<std::string, double> centroid;
    for (const auto& weights : tf) {
        for (const auto& [t, w] : weights) centroid[t] += w;
    }
    double sum_sq = 0.0;
    for (auto& [t, w] : centroid) {
        w /= n;
        sum_sq += w * w;
    }
    if (sum_sq > 0.0) {
        const double norm = std::sqrt(sum_sq);
        for (auto& [t, w] : centroid) w /= norm;
    }
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t i = 0; i < tf.size(); ++i) {
        double dot = 0.0;
        for (const auto& [t, w] : tf[i]) {
            if (auto it = centroid.find(t); it != centroid.end()) dot += w * it->second;
        }
        if (dot > best_score) {
            best_score = dot;
            best = i;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("criterion 1: random baselines hit the reference numbers") {
    Criterion c(1, "random baselines, p=0.01, n=50000", 5.0);
    const std::size_t n = 50000;
    util::SplitMix64 rng(20230825);
    std::vector<int> gold(n);
    for (auto& g : gold) g = rng.next_bernoulli(0.01) ? 1 : 0;

    const auto uniform = tasks::evaluate(tasks::random_uniform(n, 11), gold);
    ACC(c, std::abs(uniform.precision - 0.010) <= 0.003);
    ACC(c, std::abs(uniform.recall - 0.50) <= 0.02);
    ACC(c, std::abs(uniform.f1 - 0.0196) <= 0.005);

    const auto target = tasks::evaluate(tasks::random_target(n, 0.01, 12), gold);
    ACC(c, std::abs(target.precision - 0.010) <= 0.004);
    ACC(c, std::abs(target.recall - 0.010) <= 0.004);
    c.finish();
}

TEST_CASE("criterion 2: gaussian anomaly rate matches the tail oracle") {
    Criterion c(2, "z>3 rate on 100k gaussians", 2.0);
    util::SplitMix64 rng(42);
    std::vector<double> xs(100000);
    for (auto& x : xs) x = rng.next_gaussian();
    const core::TimeSeries series("noise", T(0), xs);

    anomaly::AnomalyParams params;
    double previous = 1.0;
    for (const double t : {2.0, 2.5, 3.0, 3.5}) {
        params.threshold_t = t;
        const double rate = anomaly::positive_rate(anomaly::detect_anomalies(series, params));
        if (t == 3.0) ACC(c, std::abs(rate - 0.00135) <= 0.0005);
        ACC(c, rate <= previous);
        previous = rate;
    }
    c.finish();
}

TEST_CASE("criterion 3: forest beats chance exactly where it should") {
    Criterion c(3, "forest vs. random baselines", 60.0);

    // (a) A rule-separable corpus is learned nearly perfectly.
    {
        const auto train = rule_corpus(400, 30, 0.4, 5);
        const auto test = rule_corpus(200, 30, 0.4, 6);
        tasks::ForestParams params;
        params.n_trees = 50;
        params.seed = 1;
        const auto model = tasks::ForestModel::train(train.X, train.y, train.n_features, params);
        const auto report = tasks::evaluate(model.predict(test.X), test.y);
        ACC(c, report.f1 >= 0.95);
    }

    // (b) With permuted labels the forest collapses to the random-target
    // baseline (both hover near the base rate).
    {
        double forest_f1 = 0.0;
        double target_f1 = 0.0;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto task = rule_corpus(2000, 30, 0.02, 100 + seed);
            util::SplitMix64 rng(200 + seed);
            for (std::size_t i = task.y.size(); i > 1; --i) {
                std::swap(task.y[i - 1], task.y[i - 1 - rng.next_below(i)]);
            }
            const std::size_t half = task.X.size() / 2;
            const std::vector<tasks::SparseBinaryVector> train_X(task.X.begin(),
                                                                 task.X.begin() + half);
            const std::vector<int> train_y(task.y.begin(), task.y.begin() + half);
            const std::vector<tasks::SparseBinaryVector> test_X(task.X.begin() + half,
                                                                task.X.end());
            const std::vector<int> test_y(task.y.begin() + half, task.y.end());

            tasks::ForestParams params;
            params.n_trees = 30;
            params.seed = seed;
            const auto model = tasks::ForestModel::train(train_X, train_y,
                                                         task.n_features, params);
            forest_f1 += tasks::evaluate(model.predict(test_X), test_y).f1;
            double base = 0.0;
            for (const int y : train_y) base += y;
            base /= static_cast<double>(train_y.size());
            target_f1 +=
                tasks::evaluate(tasks::random_target(test_y.size(), base, 300 + seed), test_y)
                    .f1;
        }
        ACC(c, std::abs(forest_f1 / 5.0 - target_f1 / 5.0) <= 0.05);
    }

    // (c) Ten trigger tokens: the text pipeline (tokens -> vocabulary ->
    // sparse features -> forest) clears both baselines by a wide margin.
    {
        const auto [train_ex, train_y] = trigger_corpus(600, 31);
        const auto [test_ex, test_y] = trigger_corpus(300, 32);
        const auto vocab = tasks::build_vocab(train_ex, 100);
        std::vector<tasks::SparseBinaryVector> train_X;
        for (const auto& ex : train_ex) train_X.push_back(tasks::featurize(ex.text, vocab));
        std::vector<tasks::SparseBinaryVector> test_X;
        for (const auto& ex : test_ex) test_X.push_back(tasks::featurize(ex.text, vocab));

        tasks::ForestParams params;
        params.n_trees = 60;
        params.seed = 2;
        const auto model = tasks::ForestModel::train(train_X, train_y, vocab.size(), params);
        const double forest_f1 = tasks::evaluate(model.predict(test_X), test_y).f1;

        double base = 0.0;
        for (const int y : train_y) base += y;
        base /= static_cast<double>(train_y.size());
        const double uniform_f1 =
            tasks::evaluate(tasks::random_uniform(test_y.size(), 7), test_y).f1;
        const double target_f1 =
            tasks::evaluate(tasks::random_target(test_y.size(), base, 8), test_y).f1;
        ACC(c, forest_f1 >= uniform_f1 + 0.3);
        ACC(c, forest_f1 >= target_f1 + 0.3);
    }
    c.finish();
}

TEST_CASE("criterion 4: the CLI pipeline is byte-identical across runs") {
    Criterion c(4, "pipeline determinism on the fixture corpus", 30.0);

    const auto run_once = [&](const std::filesystem::path& dir) {
        std::filesystem::copy_file(kFixtures / "config_tiny.yaml", dir / "config.yaml");
        std::filesystem::copy_file(kFixtures / "corpus_tiny.jsonl", dir / "corpus_tiny.jsonl");
        auto r = testhelpers::run_cli({"build-dataset", "--config", "config.yaml", "--built-at",
                                       "2023-04-01T00:00:00Z", "--seed", "7", "--quiet"},
                                      dir);
        REQUIRE_MESSAGE(r.exit_code == 0, r.err);
        r = testhelpers::run_cli({"make-task", "--dataset", "tech-tiny.tar.gz", "--out", "task",
                                  "--seed", "7", "--quiet"},
                                 dir);
        REQUIRE_MESSAGE(r.exit_code == 0, r.err);
        r = testhelpers::run_cli({"train-rf", "--train", "task/train.jsonl", "--out",
                                  "model.json", "--trees", "30", "--seed", "7", "--jobs", "4",
                                  "--quiet"},
                                 dir);
        REQUIRE_MESSAGE(r.exit_code == 0, r.err);
        r = testhelpers::run_cli({"evaluate", "--model", "model.json", "--examples",
                                  "task/val.jsonl", "--baselines", "--json", "--seed", "7"},
                                 dir);
        REQUIRE_MESSAGE(r.exit_code == 0, r.err);
        return r.out;
    };

    testhelpers::TempDir a("acc-pipe-a");
    testhelpers::TempDir b("acc-pipe-b");
    const auto eval_a = run_once(a.path());
    const auto eval_b = run_once(b.path());
    ACC(c, eval_a == eval_b);
    for (const std::string rel :
         {"tech-tiny.tar.gz", "task/examples.jsonl", "task/train.jsonl", "task/val.jsonl",
          "task/test.jsonl", "task/manifest.json", "model.json"}) {
        const auto lhs = testhelpers::read_file(a / rel);
        ACC(c, !lhs.empty());
        ACC(c, lhs == testhelpers::read_file(b / rel));
    }
    c.finish();
}

TEST_CASE("criterion 5: archives round-trip and tampering is named") {
    Criterion c(5, "persistence round-trip and tamper detection", 0.0);

    auto config = dataset::load_config(kFixtures / "config_10d.yaml");
    sources::LocalCorpusSource corpus(config.news_source.path, 7);
    dataset::BuildOptions options;
    options.seed = 7;
    options.jobs = 1;
    options.built_at = "2023-06-01T00:00:00Z";
    const auto ds = dataset::build_dataset(config, dataset::BuildSources{corpus}, options);

    const auto bytes = dataset::save_dataset_bytes(ds);
    const auto loaded = dataset::load_dataset_bytes(bytes);
    ACC(c, loaded == ds);
    ACC(c, dataset::save_dataset_bytes(loaded) == bytes);

    auto members = dataset::read_tar_gz(bytes);
    const auto mtime = core::parse_timestamp(ds.metadata().built_at);
    ACC(c, members.size() == 5);

    // Flip one CSV value: the error names the member.
    {
        auto tampered = members;
        tampered[1].data.replace(tampered[1].data.find(",2\n") + 1, 1, "x");
        bool named = false;
        try {
            dataset::load_dataset_bytes(dataset::write_tar_gz(tampered, mtime));
        } catch (const dataset::ArchiveError& e) {
            named = std::string(e.what()).find("signals/Q1/series.csv") != std::string::npos;
        }
        ACC(c, named);
    }
    // Remove a member outright.
    {
        auto tampered = members;
        tampered.erase(tampered.begin() + 1);
        bool named = false;
        try {
            dataset::load_dataset_bytes(dataset::write_tar_gz(tampered, mtime));
        } catch (const dataset::ArchiveError& e) {
            named = std::string(e.what()).find("missing member signals/Q1/series.csv") !=
                    std::string::npos;
        }
        ACC(c, named);
    }
    // Future format version is refused with a typed error.
    {
        auto tampered = members;
        tampered[0].data.replace(tampered[0].data.find("\"format_version\": 1"), 19,
                                 "\"format_version\": 9");
        bool typed = false;
        try {
            dataset::load_dataset_bytes(dataset::write_tar_gz(tampered, mtime));
        } catch (const dataset::ArchiveError& e) {
            typed = std::string(e.what()).find("unsupported format_version 9") !=
                    std::string::npos;
        }
        ACC(c, typed);
    }
    c.finish();
}

TEST_CASE("criterion 6: chronological splits hold and the vocabulary cannot leak") {
    Criterion c(6, "split integrity and leakage audit", 0.0);

    std::vector<tasks::TaskExample> examples;
    for (int day = 0; day < 100; ++day) {
        const bool is_test = day >= 90;
        const std::string text = is_test ? "markets wobble zzleak again" : "markets hold steady";
        examples.push_back(example("Q1", T(day), text, day % 17 == 0 ? 1 : 0));
    }
    const auto splits = tasks::chrono_split(examples);
    ACC(c, splits.val_start == T(80));
    ACC(c, splits.test_start == T(90));
    ACC(c, splits.train.size() == 80);
    ACC(c, splits.val.size() == 10);
    ACC(c, splits.test.size() == 10);
    ACC(c, splits.train.back().tick < splits.val.front().tick);
    ACC(c, splits.val.front().tick <= splits.val.back().tick);
    ACC(c, splits.val.back().tick < splits.test.front().tick);

    tasks::VocabAudit audit;
    const auto vocab = tasks::build_vocab(splits.train, 100, &audit);
    ACC(c, !vocab.index_of("zzleak").has_value());
    ACC(c, vocab.index_of("markets").has_value());
    ACC(c, audit.n_texts == 80);
    ACC(c, audit.max_tick < splits.val_start);
    c.finish();
}

TEST_CASE("criterion 7: clients parse fixtures exactly and retry counts requests") {
    Criterion c(7, "client decoding and retry accounting", 0.0);

    const auto pageviews = testhelpers::read_file(kFixtures / "pageviews_ok.json");
    const auto series = sources::parse_pageviews(pageviews, "wikimedia_pageviews",
                                                 core::Tick::parse("2023-01-01"),
                                                 core::Tick::parse("2023-01-04"));
    const std::vector<double> expected = {24250.0, 26391.0, 25107.0};
    ACC(c, std::equal(series.values().begin(), series.values().end(), expected.begin(),
                      expected.end()));

    const auto sparql = testhelpers::read_file(kFixtures / "sparql_entities.json");
    const auto records = sources::parse_sparql_entities(sparql);
    ACC(c, records.size() == 2);
    ACC(c, records[0] == sources::make_entity("Q312", "Apple Inc.", "Apple_Inc."));
    ACC(c, records[1].qid == "Q2283");

    sources::RetryPolicy policy;
    policy.max_attempts = 4;
    policy.base_delay = std::chrono::milliseconds(1);
    policy.max_delay = std::chrono::milliseconds(2);
    const auto sleep = [](std::chrono::milliseconds) {};

    for (int success_at : {1, 2, 3}) {
        int calls = 0;
        const auto response = sources::with_retry(policy, [&] {
            ++calls;
            if (calls < success_at) return sources::HttpResponse{500, "busy", {}};
            return sources::HttpResponse{200, "ok", {}};
        }, sleep);
        ACC(c, response.status == 200);
        ACC(c, calls == success_at);
    }
    {
        // Success would come on attempt 9; the policy stops at 4.
        int calls = 0;
        bool threw = false;
        try {
            sources::with_retry(policy, [&] {
                ++calls;
                return sources::HttpResponse{calls < 9 ? 503 : 200, "", {}};
            }, sleep);
        } catch (const sources::TransportError&) {
            threw = true;
        }
        ACC(c, threw);
        ACC(c, calls == 4);
    }
    {
        // 400 is the caller's problem: exactly one request, no retry.
        int calls = 0;
        const auto response = sources::with_retry(policy, [&] {
            ++calls;
            return sources::HttpResponse{400, "bad request", {}};
        }, sleep);
        ACC(c, response.status == 400);
        ACC(c, calls == 1);
    }
    c.finish();
}

TEST_CASE("criterion 8: greedy selection starts at the brute-force argmax") {
    Criterion c(8, "summarizer vs. brute force on 200 corpora", 0.0);

    const std::vector<std::string> pool = {"apple",  "chip", "stock",  "market", "rises",
                                           "falls",  "news", "banana", "sector", "deal",
                                           "merger", "ipo"};
    util::SplitMix64 rng(808);
    bool first_ok = true;
    bool size_ok = true;
    bool spread_ok = true;
    for (int corpus = 0; corpus < 200; ++corpus) {
        std::vector<std::string> sentences(3 + rng.next_below(8));
        for (auto& s : sentences) {
            const std::size_t words = 2 + rng.next_below(5);
            for (std::size_t w = 0; w < words; ++w) {
                if (w > 0) s += ' ';
                s += pool[rng.next_below(pool.size())];
            }
        }
        const auto picks = summarize::centroid_select_indices(sentences);
        first_ok = first_ok && !picks.empty() && picks[0] == brute_first_pick(sentences);
        size_ok = size_ok && picks.size() <= 5;

        const auto vectors = summarize::tfidf_vectors(sentences);
        for (std::size_t i = 0; i < picks.size(); ++i) {
            for (std::size_t j = i + 1; j < picks.size(); ++j) {
                spread_ok = spread_ok &&
                            summarize::cosine(vectors[picks[i]], vectors[picks[j]]) < 0.6;
            }
        }
    }
    ACC(c, first_ok);
    ACC(c, size_ok);
    ACC(c, spread_ok);
    c.finish();
}

TEST_CASE("criterion 9: core algebra properties hold over 1000 cases") {
    Criterion c(9, "slice/idxmax/affine property suite", 0.0);

    util::SplitMix64 rng(909);
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng.next_below(40);
        std::vector<double> values(n);
        for (auto& v : values) v = static_cast<double>(rng.next_below(12));
        const core::TimeSeries base("s", T(static_cast<int>(rng.next_below(100))), values);

        // Slice composition: two slices equal the intersected single slice.
        {
            const auto span = static_cast<std::uint64_t>(base.size());
            const core::Tick a = base.start() + static_cast<std::int64_t>(rng.next_below(span));
            const core::Tick b = a + 1 + static_cast<std::int64_t>(rng.next_below(span));
            const auto once = base.slice(a, b);
            const auto inner = static_cast<std::uint64_t>(once.size());
            const core::Tick d1 = once.start() + static_cast<std::int64_t>(rng.next_below(inner));
            const core::Tick d2 = d1 + 1 + static_cast<std::int64_t>(rng.next_below(inner));
            const auto twice = once.slice(d1, d2);
            const auto direct = base.slice(std::max(a, d1), std::min(b, d2));
            if (!(twice == direct)) ++failures;
        }
        // idxmax equals a left-to-right scan.
        {
            std::size_t best = 0;
            for (std::size_t i = 1; i < n; ++i) {
                if (values[i] > values[best]) best = i;
            }
            if (base.idxmax() != base.tick_at(best)) ++failures;
        }
        // Anomaly labels are invariant under x -> a*x + b with a > 0.
        {
            const double a = 0.1 + 9.9 * rng.next_double();
            const double b = -5.0 + 10.0 * rng.next_double();
            std::vector<double> scaled(n);
            for (std::size_t i = 0; i < n; ++i) scaled[i] = a * values[i] + b;
            anomaly::AnomalyParams params;
            params.threshold_t = 1.5;
            const auto lhs =
                anomaly::detect_anomalies(base, params);
            const auto rhs = anomaly::detect_anomalies(
                core::TimeSeries("s", base.start(), scaled), params);
            if (!std::equal(lhs.values().begin(), lhs.values().end(), rhs.values().begin(),
                            rhs.values().end())) {
                ++failures;
            }
        }
    }
    ACC(c, failures == 0);
    c.finish();
}
