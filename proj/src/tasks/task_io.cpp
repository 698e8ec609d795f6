#include "newsignals/tasks/task_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "newsignals/dataset/tar_gz.hpp"
#include "newsignals/util/text.hpp"

namespace newsignals::tasks {

namespace {

using nlohmann::json;

std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string examples_to_jsonl(const std::vector<TaskExample>& examples) {
    std::string out;
    for (const auto& ex : examples) {
        const json line = {{"qid", ex.qid},
                           {"tick", ex.tick.to_string()},
                           {"text", ex.text},
                           {"label", ex.label},
                           {"target_name", ex.target_name},
                           {"horizon", ex.horizon},
                           {"target_value", ex.target_value}};
        out += line.dump();
        out += '\n';
    }
    return out;
}

std::vector<TaskExample> examples_from_jsonl(const std::string& text) {
    std::vector<TaskExample> out;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const json doc = json::parse(line);
            TaskExample ex;
            ex.qid = doc.at("qid").get<std::string>();
            ex.tick = core::Tick::parse(doc.at("tick").get<std::string>());
            ex.text = doc.at("text").get<std::string>();
            ex.label = doc.at("label").get<int>();
            ex.target_name = doc.at("target_name").get<std::string>();
            ex.horizon = doc.at("horizon").get<int>();
            ex.target_value = doc.at("target_value").get<double>();
            if (ex.label != 0 && ex.label != 1) throw std::runtime_error("label must be 0/1");
            out.push_back(std::move(ex));
        } catch (const std::exception& e) {
            throw std::runtime_error("examples: line " + std::to_string(line_no) + ": " +
                                     e.what());
        }
    }
    return out;
}

void write_examples(const std::filesystem::path& path, const std::vector<TaskExample>& examples) {
    dataset::write_binary_file(path, examples_to_jsonl(examples));
}

std::vector<TaskExample> read_examples(const std::filesystem::path& path) {
    return examples_from_jsonl(dataset::read_binary_file(path));
}

std::string model_to_json(const ForestModel& model, const Vocabulary& vocab) {
    json trees = json::array();
    for (const auto& tree : model.trees()) {
        json nodes = json::array();
        for (const auto& node : tree.nodes) {
            nodes.push_back({{"feature", node.feature},
                             {"left", node.left},
                             {"right", node.right},
                             {"count0", node.count0},
                             {"count1", node.count1}});
        }
        trees.push_back({{"nodes", std::move(nodes)}});
    }
    const json doc = {{"format", kModelFormat},
                      {"version", kModelVersion},
                      {"n_trees", model.params().n_trees},
                      {"max_depth", model.params().max_depth},
                      {"seed", model.params().seed},
                      {"n_features", model.n_features()},
                      {"vocabulary", vocab.tokens()},
                      {"trees", std::move(trees)}};
    return doc.dump(2) + "\n";
}

std::pair<ForestModel, Vocabulary> model_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("model: not JSON: ") + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != kModelFormat) {
            throw std::runtime_error("model: unknown format '" +
                                     doc.at("format").get<std::string>() + "'");
        }
        if (const int version = doc.at("version").get<int>(); version != kModelVersion) {
            throw std::runtime_error("model: unsupported version " + std::to_string(version));
        }
        ForestParams params;
        params.n_trees = doc.at("n_trees").get<std::size_t>();
        params.max_depth = doc.at("max_depth").get<std::size_t>();
        params.seed = doc.at("seed").get<std::uint64_t>();
        std::vector<DecisionTree> trees;
        for (const auto& tree : doc.at("trees")) {
            DecisionTree t;
            for (const auto& node : tree.at("nodes")) {
                t.nodes.push_back(TreeNode{node.at("feature").get<std::int64_t>(),
                                           node.at("left").get<std::int32_t>(),
                                           node.at("right").get<std::int32_t>(),
                                           node.at("count0").get<std::int64_t>(),
                                           node.at("count1").get<std::int64_t>()});
            }
            trees.push_back(std::move(t));
        }
        if (trees.size() != params.n_trees) {
            throw std::runtime_error("model: tree count does not match n_trees");
        }
        auto vocab =
            Vocabulary::from_tokens(doc.at("vocabulary").get<std::vector<std::string>>());
        ForestModel model(params, doc.at("n_features").get<std::size_t>(), std::move(trees));
        return {std::move(model), std::move(vocab)};
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("model: unexpected shape: ") + e.what());
    }
}

void save_model(const std::filesystem::path& path, const ForestModel& model,
                const Vocabulary& vocab) {
    dataset::write_binary_file(path, model_to_json(model, vocab));
}

std::pair<ForestModel, Vocabulary> load_model(const std::filesystem::path& path) {
    return model_from_json(dataset::read_binary_file(path));
}

std::string report_to_json(const EvalReport& report) {
    const json doc = {{"precision", report.precision}, {"recall", report.recall},
                      {"f1", report.f1},               {"pos_rate", report.pos_rate},
                      {"tp", report.tp},               {"fp", report.fp},
                      {"fn", report.fn},               {"tn", report.tn}};
    return doc.dump(2) + "\n";
}

std::string format_eval_table(const std::vector<std::pair<std::string, EvalReport>>& rows) {
    std::size_t name_width = 5;  // "model"
    for (const auto& [name, report] : rows) name_width = std::max(name_width, name.size());
    std::string out = "model";
    out.append(name_width - 5, ' ');
    out += "  prec   rec    f1     %pos\n";
    for (const auto& [name, report] : rows) {
        out += name;
        out.append(name_width - name.size(), ' ');
        out += "  " + fixed3(report.precision) + "  " + fixed3(report.recall) + "  " +
               fixed3(report.f1) + "  " + fixed3(report.pos_rate) + "\n";
    }
    return out;
}

}  // namespace newsignals::tasks
