#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "newsignals/anomaly/anomaly.hpp"
#include "newsignals/core/plot.hpp"
#include "newsignals/dataset/archive.hpp"
#include "newsignals/dataset/cached_load.hpp"
#include "newsignals/dataset/config.hpp"
#include "newsignals/dataset/dataset.hpp"
#include "newsignals/sources/errors.hpp"
#include "newsignals/sources/http.hpp"
#include "newsignals/sources/sparql.hpp"
#include "newsignals/summarize/centroid.hpp"
#include "newsignals/tasks/baselines.hpp"
#include "newsignals/tasks/examples.hpp"
#include "newsignals/tasks/forest.hpp"
#include "newsignals/tasks/splits.hpp"
#include "newsignals/tasks/task_io.hpp"
#include "newsignals/tasks/vocab.hpp"
#include "newsignals/util/text.hpp"

namespace {

namespace ns = newsignals;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUser = 1;
constexpr int kExitTransport = 2;

struct Common {
    std::uint64_t seed = 0;
    std::string cache_dir;
    bool quiet = false;

    std::optional<ns::sources::HttpSession> session;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Master RNG seed")->capture_default_str();
        cmd->add_option("--cache-dir", cache_dir,
                        "Cache root (default: $NEWS_SIGNALS_CACHE_DIR)");
        cmd->add_flag("--quiet", quiet, "Suppress informational output");
    }

    std::filesystem::path cache_root() const {
        if (!cache_dir.empty()) return cache_dir;
        if (auto dir = ns::sources::default_cache_dir()) return *dir;
        return {};
    }

    ns::sources::HttpSession& http() {
        if (!session) {
            ns::sources::HttpSession::Options options;
            if (const auto root = cache_root(); !root.empty()) options.cache_dir = root / "http";
            session.emplace(options);
        }
        return *session;
    }

    void info(const std::string& line) const {
        if (!quiet) std::cout << line << "\n";
    }
};

ns::dataset::SignalsDataset open_dataset(const std::string& location, Common& common) {
    ns::dataset::CachedLoadOptions options;
    if (const auto root = common.cache_root(); !root.empty()) options.cache_dir = root / "datasets";
    const bool remote =
        location.rfind("http://", 0) == 0 || location.rfind("https://", 0) == 0;
    if (remote) options.session = &common.http();
    if (!common.quiet) {
        options.log = [](const std::string& line) { std::cerr << line << "\n"; };
    }
    return ns::dataset::cached_load(location, options);
}

const ns::core::Signal& pick_signal(const ns::dataset::SignalsDataset& ds,
                                    const std::string& qid) {
    if (!qid.empty()) return ds.at(qid);
    if (ds.size() != 1) {
        throw std::invalid_argument("dataset has " + std::to_string(ds.size()) +
                                    " signals; pick one with --qid");
    }
    return ds.signals().begin()->second;
}

std::pair<ns::core::Tick, ns::core::Tick> pick_range(const ns::core::Signal& signal,
                                                     const std::string& start,
                                                     const std::string& end) {
    ns::core::Tick s = start.empty() ? signal.start() : ns::core::Tick::parse(start);
    ns::core::Tick e = end.empty() ? signal.end() : ns::core::Tick::parse(end);
    return {s, e};
}

double pos_rate_of(const std::vector<ns::tasks::TaskExample>& examples) {
    if (examples.empty()) return 0.0;
    std::size_t pos = 0;
    for (const auto& ex : examples) pos += static_cast<std::size_t>(ex.label);
    return static_cast<double>(pos) / static_cast<double>(examples.size());
}

// ---- fetch-entities ------------------------------------------------------

struct FetchEntitiesArgs {
    std::string sparql_file;
    std::vector<std::string> qids;
    std::string out;
    std::string endpoint;
};

int run_fetch_entities(const FetchEntitiesArgs& args, Common& common) {
    std::vector<ns::sources::EntityRecord> records;
    if (!args.sparql_file.empty()) {
        const std::string query = ns::dataset::read_binary_file(args.sparql_file);
        ns::sources::SparqlClient client(common.http(), args.endpoint);
        records = client.run(query);
    } else {
        for (const auto& qid : args.qids) records.push_back(ns::sources::make_entity(qid));
    }
    std::string out;
    for (const auto& record : records) {
        json line = {{"qid", record.qid}, {"label", record.label}};
        if (record.wikipedia_title) line["wikipedia_title"] = *record.wikipedia_title;
        out += line.dump();
        out += '\n';
    }
    ns::dataset::write_binary_file(args.out, out);
    common.info("wrote " + std::to_string(records.size()) + " entities to " + args.out);
    return kExitOk;
}

// ---- build-dataset -------------------------------------------------------

struct BuildDatasetArgs {
    std::string config;
    std::string out;
    std::string built_at;
    int jobs = 4;
    bool strict = false;
};

int run_build_dataset(const BuildDatasetArgs& args, Common& common) {
    auto config = ns::dataset::load_config(args.config);
    if (!args.out.empty()) config.output = args.out;

    ns::sources::LocalCorpusSource corpus(config.news_source.path, common.seed);
    std::optional<ns::sources::PageviewsClient> pageviews;
    std::optional<ns::sources::SparqlClient> sparql;
    const bool wants_pageviews =
        std::find(config.targets.begin(), config.targets.end(),
                  ns::dataset::TargetKind::wikimedia_pageviews) != config.targets.end();
    if (wants_pageviews) {
        pageviews.emplace(common.http(), config.wikimedia_endpoint.value_or(
                                             ns::sources::PageviewsClient::kDefaultEndpoint));
    }
    if (config.entities.sparql_query_path) {
        sparql.emplace(common.http(), config.sparql_endpoint.value_or(""));
    }

    ns::dataset::BuildOptions options;
    options.seed = common.seed;
    options.jobs = args.jobs;
    options.strict = args.strict;
    options.built_at = args.built_at;
    std::size_t warnings = 0;
    options.warn = [&](const std::string& message) {
        ++warnings;
        if (!common.quiet) std::cerr << "warning: " << message << "\n";
    };

    ns::dataset::BuildSources sources{corpus, pageviews ? &*pageviews : nullptr,
                                      sparql ? &*sparql : nullptr};
    const auto dataset = ns::dataset::build_dataset(config, sources, options);
    ns::dataset::save_dataset(dataset, config.output);

    if (!common.quiet) {
        std::cout << "qid\tlabel\tdays\tdocs\tvolume\n";
        for (const auto& [qid, signal] : dataset.signals()) {
            const auto& volume = signal.series_at("news_volume");
            double total = 0;
            for (const auto v : volume.values()) total += v;
            std::cout << qid << "\t" << signal.name() << "\t" << volume.size() << "\t"
                      << signal.feed_at("stories").total_documents() << "\t"
                      << ns::util::format_double(total) << "\n";
        }
        std::cout << "wrote " << config.output.string() << " (" << dataset.size()
                  << " signals)\n";
        if (warnings > 0) std::cerr << warnings << " warning(s)\n";
    }
    return kExitOk;
}

// ---- make-task -----------------------------------------------------------

struct MakeTaskArgs {
    std::string dataset;
    std::string target = "news_volume";
    std::string out_dir;
    double threshold = 3.0;
    int horizon = 0;
    double train_frac = 0.8;
    double val_frac = 0.1;
    double test_frac = 0.1;
    std::size_t balance_pos = 0;
    std::size_t balance_neg = 0;
    bool stats_from_train = false;
};

int run_make_task(const MakeTaskArgs& args, Common& common) {
    const auto ds = open_dataset(args.dataset, common);

    ns::anomaly::AnomalyParams anomaly;
    anomaly.threshold_t = args.threshold;
    auto examples = ns::tasks::make_examples(ds, args.target, anomaly, args.horizon);
    auto splits =
        ns::tasks::chrono_split(examples, args.train_frac, args.val_frac, args.test_frac);
    if (args.stats_from_train) {
        // Re-label with moments estimated on the training window only; cut
        // dates stay put because the tick axis is unchanged.
        anomaly.stats_window = {{ds.metadata().start, splits.val_start}};
        examples = ns::tasks::make_examples(ds, args.target, anomaly, args.horizon);
        splits = ns::tasks::chrono_split(examples, args.train_frac, args.val_frac,
                                         args.test_frac);
    }

    json balance_info;
    auto train = splits.train;
    if (args.balance_pos > 0 || args.balance_neg > 0) {
        auto balanced = ns::tasks::balance_sample(splits.train, args.balance_pos,
                                                  args.balance_neg, common.seed);
        balance_info = {{"n_pos", args.balance_pos},
                        {"n_neg", args.balance_neg},
                        {"pool_pos", balanced.pool_pos},
                        {"pool_neg", balanced.pool_neg},
                        {"pos_with_replacement", balanced.pos_with_replacement},
                        {"neg_with_replacement", balanced.neg_with_replacement}};
        train = std::move(balanced.examples);
    }

    std::filesystem::create_directories(args.out_dir);
    const std::filesystem::path dir = args.out_dir;
    ns::tasks::write_examples(dir / "examples.jsonl", examples);
    ns::tasks::write_examples(dir / "train.jsonl", train);
    ns::tasks::write_examples(dir / "val.jsonl", splits.val);
    ns::tasks::write_examples(dir / "test.jsonl", splits.test);

    json per_signal = json::object();
    for (const auto& [qid, signal] : ds.signals()) {
        std::vector<ns::tasks::TaskExample> mine;
        for (const auto& ex : examples) {
            if (ex.qid == qid) mine.push_back(ex);
        }
        per_signal[qid] = pos_rate_of(mine);
    }
    const json manifest = {
        {"version", 1},
        {"dataset", {{"name", ds.metadata().name},
                     {"start", ds.metadata().start.to_string()},
                     {"end", ds.metadata().end.to_string()}}},
        {"target", args.target},
        {"horizon", args.horizon},
        {"anomaly", {{"threshold", args.threshold},
                     {"strict", anomaly.strict},
                     {"stats_from_train", args.stats_from_train}}},
        {"fractions", {{"train", args.train_frac}, {"val", args.val_frac},
                       {"test", args.test_frac}}},
        {"cuts", {{"val_start", splits.val_start.to_string()},
                  {"test_start", splits.test_start.to_string()}}},
        {"counts", {{"train", train.size()}, {"val", splits.val.size()},
                    {"test", splits.test.size()}}},
        {"pos_rate", {{"all", pos_rate_of(examples)},
                      {"train", pos_rate_of(splits.train)},
                      {"val", pos_rate_of(splits.val)},
                      {"test", pos_rate_of(splits.test)},
                      {"per_signal", per_signal}}},
        {"balance", balance_info},
        {"seed", common.seed},
    };
    ns::dataset::write_binary_file(dir / "manifest.json", manifest.dump(2) + "\n");

    common.info("examples: " + std::to_string(examples.size()) + " (train " +
                std::to_string(train.size()) + ", val " + std::to_string(splits.val.size()) +
                ", test " + std::to_string(splits.test.size()) + ")");
    common.info("cuts: val " + splits.val_start.to_string() + ", test " +
                splits.test_start.to_string());
    return kExitOk;
}

// ---- train-rf ------------------------------------------------------------

struct TrainRfArgs {
    std::string train_file;
    std::string manifest_file;
    std::string out;
    std::size_t n_trees = 100;
    std::size_t max_depth = 20;
    std::size_t vocab_size = ns::tasks::Vocabulary::kDefaultSize;
    int jobs = 4;
};

int run_train_rf(const TrainRfArgs& args, Common& common) {
    const auto train = ns::tasks::read_examples(args.train_file);
    if (train.empty()) throw std::invalid_argument("train-rf: no training examples");

    std::string manifest_path = args.manifest_file;
    if (manifest_path.empty()) {
        const auto sibling =
            std::filesystem::path(args.train_file).parent_path() / "manifest.json";
        if (std::filesystem::exists(sibling)) manifest_path = sibling.string();
    }

    ns::tasks::VocabAudit audit;
    const auto vocab = ns::tasks::build_vocab(train, args.vocab_size, &audit);
    if (vocab.size() == 0) throw std::invalid_argument("train-rf: empty vocabulary");

    if (!manifest_path.empty()) {
        const auto manifest = json::parse(ns::dataset::read_binary_file(manifest_path));
        const auto val_start =
            ns::core::Tick::parse(manifest.at("cuts").at("val_start").get<std::string>());
        if (audit.max_tick >= val_start) {
            throw std::invalid_argument(
                "train-rf: leakage - training texts reach " + audit.max_tick.to_string() +
                ", at or past the validation cut " + val_start.to_string());
        }
        common.info("leakage audit: vocabulary from " + std::to_string(audit.n_texts) +
                    " train texts, ticks " + audit.min_tick.to_string() + ".." +
                    audit.max_tick.to_string() + " < val cut " + val_start.to_string());
    }

    std::vector<ns::tasks::SparseBinaryVector> X;
    std::vector<int> y;
    X.reserve(train.size());
    y.reserve(train.size());
    for (const auto& ex : train) {
        X.push_back(ns::tasks::featurize(ex.text, vocab));
        y.push_back(ex.label);
    }

    ns::tasks::ForestParams params;
    params.n_trees = args.n_trees;
    params.max_depth = args.max_depth;
    params.seed = common.seed;
    params.jobs = args.jobs;
    const auto model = ns::tasks::ForestModel::train(X, y, vocab.size(), params);
    ns::tasks::save_model(args.out, model, vocab);

    const auto report = ns::tasks::evaluate(model.predict(X), y);
    common.info("trained " + std::to_string(args.n_trees) + " trees on " +
                std::to_string(train.size()) + " examples (vocab " +
                std::to_string(vocab.size()) + "); train F1 " +
                ns::util::format_double(report.f1));
    common.info("wrote " + args.out);
    return kExitOk;
}

// ---- evaluate ------------------------------------------------------------

struct EvaluateArgs {
    std::string model_file;
    std::string examples_file;
    bool baselines = false;
    bool as_json = false;
};

int run_evaluate(const EvaluateArgs& args, Common& common) {
    const auto [model, vocab] = ns::tasks::load_model(args.model_file);
    const auto examples = ns::tasks::read_examples(args.examples_file);
    if (examples.empty()) throw std::invalid_argument("evaluate: no examples");

    std::vector<ns::tasks::SparseBinaryVector> X;
    std::vector<int> gold;
    for (const auto& ex : examples) {
        X.push_back(ns::tasks::featurize(ex.text, vocab));
        gold.push_back(ex.label);
    }

    std::vector<std::pair<std::string, ns::tasks::EvalReport>> rows;
    rows.emplace_back("random-forest", ns::tasks::evaluate(model.predict(X), gold));
    if (args.baselines) {
        const auto n = gold.size();
        double base = 0.0;
        for (const auto g : gold) base += g;
        base /= static_cast<double>(n);
        rows.emplace_back("random-uniform",
                          ns::tasks::evaluate(ns::tasks::random_uniform(n, common.seed), gold));
        rows.emplace_back(
            "random-target",
            ns::tasks::evaluate(ns::tasks::random_target(n, base, common.seed + 1), gold));
    }

    if (args.as_json) {
        json doc = json::object();
        for (const auto& [name, report] : rows) {
            doc[name] = json::parse(ns::tasks::report_to_json(report));
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << ns::tasks::format_eval_table(rows);
    }
    return kExitOk;
}

// ---- summarize -----------------------------------------------------------

struct SummarizeArgs {
    std::string dataset;
    std::string qid;
    std::string start;
    std::string end;
    std::string out;
    std::size_t k = 5;
};

int run_summarize(const SummarizeArgs& args, Common& common) {
    const auto ds = open_dataset(args.dataset, common);
    ns::summarize::CentroidParams params;
    params.k = args.k;

    std::string out;
    for (const auto& [qid, signal] : ds.signals()) {
        if (!args.qid.empty() && qid != args.qid) continue;
        const auto [start, end] = pick_range(signal, args.start, args.end);
        for (const auto& [feed_name, feed] : signal.feeds()) {
            for (ns::core::Tick t = start; t < end; ++t) {
                const auto& docs = feed.bucket(t);
                if (docs.empty()) continue;
                const json line = {{"qid", qid},
                                   {"date", t.to_string()},
                                   {"sentences", ns::summarize::centroid_select(docs, params)}};
                out += line.dump();
                out += '\n';
            }
        }
    }
    if (args.out.empty()) {
        std::cout << out;
    } else {
        ns::dataset::write_binary_file(args.out, out);
        common.info("wrote " + args.out);
    }
    return kExitOk;
}

// ---- plot ----------------------------------------------------------------

struct PlotArgs {
    std::string dataset;
    std::string qid;
    std::string start;
    std::string end;
    std::string out_dir = ".";
};

int run_plot(const PlotArgs& args, Common& common) {
    const auto ds = open_dataset(args.dataset, common);
    const auto& signal = pick_signal(ds, args.qid);
    const auto [start, end] = pick_range(signal, args.start, args.end);
    const auto sliced = signal.slice(start, end);
    std::filesystem::create_directories(args.out_dir);
    ns::core::export_plot(sliced, args.out_dir);
    common.info("wrote " + (std::filesystem::path(args.out_dir) / "plot.csv").string() + " and " +
                (std::filesystem::path(args.out_dir) / "plot.svg").string());
    return kExitOk;
}

// ---- inspect -------------------------------------------------------------

struct InspectArgs {
    std::string dataset;
    std::string qid;
    std::string start;
    std::string end;
    std::string target = "news_volume";
    bool top_anomaly = false;
};

int run_inspect(const InspectArgs& args, Common& common) {
    const auto ds = open_dataset(args.dataset, common);
    const auto& signal = pick_signal(ds, args.qid);

    if (args.top_anomaly) {
        const auto& series = signal.series_at(args.target);
        const auto z = ns::anomaly::zscore_series(series);
        const auto top = z.idxmax();
        std::cout << signal.id() << " top anomaly on " << args.target << ": "
                  << top.to_string() << " (value " << ns::util::format_double(series.value_at(top))
                  << ", z " << ns::util::format_double(z.value_at(top)) << ")\n";
        for (const auto& [feed_name, feed] : signal.feeds()) {
            for (const auto& doc : feed.bucket(top)) {
                std::cout << "  - " << doc.title << "\n";
            }
        }
        return kExitOk;
    }

    const auto [start, end] = pick_range(signal, args.start, args.end);
    const auto table = signal.slice(start, end).to_row_table();
    std::cout << "date";
    for (const auto& name : table.series_names) std::cout << "\t" << name;
    for (const auto& name : table.feed_names) std::cout << "\t" << name << "(docs)";
    std::cout << "\n";
    for (const auto& row : table.rows) {
        std::cout << row.tick.to_string();
        for (const auto v : row.values) std::cout << "\t" << ns::util::format_double(v);
        for (const auto& docs : row.documents) std::cout << "\t" << docs.size();
        std::cout << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"News-signals datasets: build, task, train, evaluate"};
    app.require_subcommand(1);
    Common common;

    auto* fetch_cmd = app.add_subcommand("fetch-entities", "Resolve entities to JSONL records");
    FetchEntitiesArgs fetch_args;
    {
        auto* sparql = fetch_cmd->add_option("--sparql", fetch_args.sparql_file,
                                             "SPARQL query file to run");
        auto* qids = fetch_cmd->add_option("--qids", fetch_args.qids,
                                           "Comma-separated QIDs to pass through")
                         ->delimiter(',');
        sparql->excludes(qids);
        qids->excludes(sparql);
        fetch_cmd->add_option("--out", fetch_args.out, "Output JSONL path")->required();
        fetch_cmd->add_option("--endpoint", fetch_args.endpoint,
                              "SPARQL endpoint (default: $SPARQL_ENDPOINT or Wikidata)");
        common.add_flags(fetch_cmd);
    }

    auto* build_cmd = app.add_subcommand("build-dataset", "Build and save a signals dataset");
    BuildDatasetArgs build_args;
    {
        build_cmd->add_option("--config", build_args.config, "Dataset YAML config")->required();
        build_cmd->add_option("--out", build_args.out, "Override the config's output path");
        build_cmd->add_option("--built-at", build_args.built_at,
                              "Pin the build timestamp (ISO-8601) for reproducible archives");
        build_cmd->add_option("--jobs", build_args.jobs, "Parallel entity builds")
            ->capture_default_str();
        build_cmd->add_flag("--strict", build_args.strict,
                            "Escalate per-entity fetch warnings to errors");
        common.add_flags(build_cmd);
    }

    auto* task_cmd = app.add_subcommand("make-task", "Derive anomaly-classification examples");
    MakeTaskArgs task_args;
    {
        task_cmd->add_option("--dataset", task_args.dataset, "Dataset archive path or URL")
            ->required();
        task_cmd->add_option("--target", task_args.target, "Target series name")
            ->capture_default_str();
        task_cmd->add_option("--out", task_args.out_dir, "Output directory")->required();
        task_cmd->add_option("--threshold", task_args.threshold, "Anomaly threshold (std devs)")
            ->capture_default_str();
        task_cmd->add_option("--horizon", task_args.horizon, "Label offset in days")
            ->capture_default_str();
        task_cmd->add_option("--train-frac", task_args.train_frac, "Training fraction")
            ->capture_default_str();
        task_cmd->add_option("--val-frac", task_args.val_frac, "Validation fraction")
            ->capture_default_str();
        task_cmd->add_option("--test-frac", task_args.test_frac, "Test fraction")
            ->capture_default_str();
        task_cmd->add_option("--balance-pos", task_args.balance_pos,
                             "Positives to sample for train.jsonl (0 = keep raw)");
        task_cmd->add_option("--balance-neg", task_args.balance_neg,
                             "Negatives to sample for train.jsonl (0 = keep raw)");
        task_cmd->add_flag("--stats-from-train", task_args.stats_from_train,
                           "Estimate anomaly moments on the training window only");
        common.add_flags(task_cmd);
    }

    auto* train_cmd = app.add_subcommand("train-rf", "Train the random-forest baseline");
    TrainRfArgs train_args;
    {
        train_cmd->add_option("--train", train_args.train_file, "Training examples JSONL")
            ->required();
        train_cmd->add_option("--manifest", train_args.manifest_file,
                              "Split manifest for the leakage audit (default: sibling "
                              "manifest.json)");
        train_cmd->add_option("--out", train_args.out, "Model output path")->required();
        train_cmd->add_option("--trees", train_args.n_trees, "Number of trees")
            ->capture_default_str();
        train_cmd->add_option("--max-depth", train_args.max_depth, "Maximum tree depth")
            ->capture_default_str();
        train_cmd->add_option("--vocab-size", train_args.vocab_size, "Vocabulary size cap")
            ->capture_default_str();
        train_cmd->add_option("--jobs", train_args.jobs, "Training threads")
            ->capture_default_str();
        common.add_flags(train_cmd);
    }

    auto* eval_cmd = app.add_subcommand("evaluate", "Score a model on examples");
    EvaluateArgs eval_args;
    {
        eval_cmd->add_option("--model", eval_args.model_file, "Model file")->required();
        eval_cmd->add_option("--examples", eval_args.examples_file, "Examples JSONL")
            ->required();
        eval_cmd->add_flag("--baselines", eval_args.baselines,
                           "Also score random-uniform and random-target baselines");
        eval_cmd->add_flag("--json", eval_args.as_json, "Machine-readable report");
        common.add_flags(eval_cmd);
    }

    auto* summarize_cmd =
        app.add_subcommand("summarize", "Extract key sentences per (signal, day)");
    SummarizeArgs summarize_args;
    {
        summarize_cmd->add_option("--dataset", summarize_args.dataset,
                                  "Dataset archive path or URL")
            ->required();
        summarize_cmd->add_option("--qid", summarize_args.qid, "Restrict to one signal");
        summarize_cmd->add_option("--start", summarize_args.start, "First day (YYYY-MM-DD)");
        summarize_cmd->add_option("--end", summarize_args.end, "Day after the last (YYYY-MM-DD)");
        summarize_cmd->add_option("--out", summarize_args.out, "Output JSONL (default: stdout)");
        summarize_cmd->add_option("--k", summarize_args.k, "Sentences per day")
            ->capture_default_str();
        common.add_flags(summarize_cmd);
    }

    auto* plot_cmd = app.add_subcommand("plot", "Export plot.csv and plot.svg for a signal");
    PlotArgs plot_args;
    {
        plot_cmd->add_option("--dataset", plot_args.dataset, "Dataset archive path or URL")
            ->required();
        plot_cmd->add_option("--qid", plot_args.qid, "Signal to plot (optional when unique)");
        plot_cmd->add_option("--start", plot_args.start, "First day (YYYY-MM-DD)");
        plot_cmd->add_option("--end", plot_args.end, "Day after the last (YYYY-MM-DD)");
        plot_cmd->add_option("--out", plot_args.out_dir, "Output directory")
            ->capture_default_str();
        common.add_flags(plot_cmd);
    }

    auto* inspect_cmd = app.add_subcommand("inspect", "Print a signal's rows or top anomaly");
    InspectArgs inspect_args;
    {
        inspect_cmd->add_option("--dataset", inspect_args.dataset, "Dataset archive path or URL")
            ->required();
        inspect_cmd->add_option("--qid", inspect_args.qid, "Signal (optional when unique)");
        inspect_cmd->add_option("--start", inspect_args.start, "First day (YYYY-MM-DD)");
        inspect_cmd->add_option("--end", inspect_args.end, "Day after the last (YYYY-MM-DD)");
        inspect_cmd->add_option("--target", inspect_args.target, "Series for --top-anomaly")
            ->capture_default_str();
        inspect_cmd->add_flag("--top-anomaly", inspect_args.top_anomaly,
                              "Show the highest-z day and its headlines");
        common.add_flags(inspect_cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUser;
    }

    try {
        if (fetch_cmd->parsed()) {
            if (fetch_args.sparql_file.empty() == fetch_args.qids.empty()) {
                std::cerr << "fetch-entities: give exactly one of --sparql or --qids\n";
                return kExitUser;
            }
            return run_fetch_entities(fetch_args, common);
        }
        if (build_cmd->parsed()) return run_build_dataset(build_args, common);
        if (task_cmd->parsed()) return run_make_task(task_args, common);
        if (train_cmd->parsed()) return run_train_rf(train_args, common);
        if (eval_cmd->parsed()) return run_evaluate(eval_args, common);
        if (summarize_cmd->parsed()) return run_summarize(summarize_args, common);
        if (plot_cmd->parsed()) return run_plot(plot_args, common);
        if (inspect_cmd->parsed()) return run_inspect(inspect_args, common);
        std::cerr << "no subcommand\n";
        return kExitUser;
    } catch (const ns::sources::TransportError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTransport;
    } catch (const ns::sources::NotFoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTransport;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUser;
    }
}
