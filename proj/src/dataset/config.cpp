#include "newsignals/dataset/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace newsignals::dataset {

std::string to_string(TargetKind kind) {
    switch (kind) {
        case TargetKind::news_volume: return "news_volume";
        case TargetKind::wikimedia_pageviews: return "wikimedia_pageviews";
    }
    return "?";
}

TargetKind target_from_string(const std::string& name) {
    if (name == "news_volume") return TargetKind::news_volume;
    if (name == "wikimedia_pageviews") return TargetKind::wikimedia_pageviews;
    throw std::invalid_argument("unknown target '" + name + "'");
}

ConfigError::ConfigError(const std::vector<std::string>& problems_in)
    : std::runtime_error([&] {
          std::ostringstream msg;
          msg << "invalid dataset config (" << problems_in.size() << " problem"
              << (problems_in.size() == 1 ? "" : "s") << "):";
          for (const auto& p : problems_in) msg << "\n  - " << p;
          return msg.str();
      }()),
      problems(problems_in) {}

namespace {

class Collector {
public:
    void add(std::string problem) { problems_.push_back(std::move(problem)); }
    void finish() const {
        if (!problems_.empty()) throw ConfigError(problems_);
    }
    bool clean() const { return problems_.empty(); }

private:
    std::vector<std::string> problems_;
};

void reject_unknown_keys(const YAML::Node& map, const std::set<std::string>& known,
                         const std::string& where, Collector& errors) {
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        if (!known.count(key)) errors.add(where + ": unknown key '" + key + "'");
    }
}

std::optional<core::Tick> parse_tick_field(const YAML::Node& node, const std::string& where,
                                           Collector& errors) {
    if (!node) {
        errors.add(where + ": missing");
        return std::nullopt;
    }
    try {
        return core::Tick::parse(node.as<std::string>());
    } catch (const std::exception& e) {
        errors.add(where + ": " + e.what());
        return std::nullopt;
    }
}

void parse_entities(const YAML::Node& node, DatasetConfig& config, Collector& errors) {
    if (!node) {
        errors.add("entities: missing");
        return;
    }
    if (node.IsSequence()) {
        if (node.size() == 0) {
            errors.add("entities: list is empty");
            return;
        }
        for (std::size_t i = 0; i < node.size(); ++i) {
            const auto& item = node[i];
            const std::string where = "entities[" + std::to_string(i) + "]";
            try {
                if (item.IsScalar()) {
                    config.entities.inline_entities.push_back(
                        sources::make_entity(item.as<std::string>()));
                } else if (item.IsMap()) {
                    reject_unknown_keys(item, {"qid", "label", "wikipedia_title"}, where, errors);
                    std::optional<std::string> title;
                    if (item["wikipedia_title"]) title = item["wikipedia_title"].as<std::string>();
                    config.entities.inline_entities.push_back(sources::make_entity(
                        item["qid"] ? item["qid"].as<std::string>() : "",
                        item["label"] ? item["label"].as<std::string>() : "", std::move(title)));
                } else {
                    errors.add(where + ": expected a QID string or a map");
                }
            } catch (const std::exception& e) {
                errors.add(where + ": " + e.what());
            }
        }
    } else if (node.IsMap()) {
        reject_unknown_keys(node, {"sparql"}, "entities", errors);
        if (node["sparql"]) {
            config.entities.sparql_query_path = node["sparql"].as<std::string>();
        } else {
            errors.add("entities: map form requires key 'sparql'");
        }
    } else {
        errors.add("entities: expected a list of QIDs or {sparql: <query file>}");
    }
}

void parse_news_source(const YAML::Node& node, DatasetConfig& config, Collector& errors) {
    if (!node) {
        errors.add("news_source: missing");
        return;
    }
    if (!node.IsMap()) {
        errors.add("news_source: expected a map with 'backend'");
        return;
    }
    reject_unknown_keys(node, {"backend", "path"}, "news_source", errors);
    const std::string backend = node["backend"] ? node["backend"].as<std::string>() : "";
    if (backend != "local_corpus") {
        errors.add("news_source.backend: expected 'local_corpus', got '" + backend + "'");
    }
    config.news_source.backend = backend;
    if (node["path"]) {
        config.news_source.path = node["path"].as<std::string>();
    } else {
        errors.add("news_source.path: missing");
    }
}

void parse_targets(const YAML::Node& node, DatasetConfig& config, Collector& errors) {
    if (!node) {
        errors.add("targets: missing");
        return;
    }
    if (!node.IsSequence() || node.size() == 0) {
        errors.add("targets: expected a non-empty list");
        return;
    }
    std::set<std::string> seen;
    for (const auto& item : node) {
        try {
            const auto name = item.as<std::string>();
            if (!seen.insert(name).second) {
                errors.add("targets: duplicate '" + name + "'");
                continue;
            }
            config.targets.push_back(target_from_string(name));
        } catch (const std::exception& e) {
            errors.add(std::string("targets: ") + e.what());
        }
    }
}

}  // namespace

DatasetConfig parse_config(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ConfigError({std::string("not valid YAML: ") + e.what()});
    }
    Collector errors;
    if (!root.IsMap()) {
        errors.add("top level: expected a map");
        errors.finish();
    }

    reject_unknown_keys(root,
                        {"name", "start", "end", "entities", "news_source", "stories_per_day",
                         "targets", "output", "wikimedia_project", "wikimedia_endpoint",
                         "sparql_endpoint"},
                        "top level", errors);

    DatasetConfig config;
    if (root["name"]) {
        config.name = root["name"].as<std::string>();
    } else {
        errors.add("name: missing");
    }

    const auto start = parse_tick_field(root["start"], "start", errors);
    const auto end = parse_tick_field(root["end"], "end", errors);
    if (start && end) {
        if (*start < *end) {
            config.start = *start;
            config.end = *end;
        } else {
            errors.add("start/end: start must precede end");
        }
    }

    parse_entities(root["entities"], config, errors);
    parse_news_source(root["news_source"], config, errors);
    parse_targets(root["targets"], config, errors);

    if (root["stories_per_day"]) {
        try {
            config.stories_per_day = root["stories_per_day"].as<int>();
            if (config.stories_per_day < 0) errors.add("stories_per_day: must be >= 0");
        } catch (const std::exception&) {
            errors.add("stories_per_day: expected an integer");
        }
    }
    if (root["output"]) {
        config.output = root["output"].as<std::string>();
    } else {
        errors.add("output: missing");
    }
    if (root["wikimedia_project"]) config.wikimedia_project = root["wikimedia_project"].as<std::string>();
    if (root["wikimedia_endpoint"]) config.wikimedia_endpoint = root["wikimedia_endpoint"].as<std::string>();
    if (root["sparql_endpoint"]) config.sparql_endpoint = root["sparql_endpoint"].as<std::string>();

    errors.finish();
    return config;
}

DatasetConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError({"cannot open config file " + path.string()});
    std::ostringstream text;
    text << in.rdbuf();
    DatasetConfig config = parse_config(text.str());

    const auto base = path.parent_path();
    const auto resolve = [&](std::filesystem::path& p) {
        if (!p.empty() && p.is_relative()) p = base / p;
    };
    resolve(config.news_source.path);
    if (config.entities.sparql_query_path) resolve(*config.entities.sparql_query_path);
    resolve(config.output);
    return config;
}

}  // namespace newsignals::dataset
