#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "newsignals/tasks/baselines.hpp"
#include "newsignals/tasks/forest.hpp"

namespace newsignals::tasks {

// Examples travel as JSONL, one TaskExample per line.
std::string examples_to_jsonl(const std::vector<TaskExample>& examples);
std::vector<TaskExample> examples_from_jsonl(const std::string& text);
void write_examples(const std::filesystem::path& path, const std::vector<TaskExample>& examples);
std::vector<TaskExample> read_examples(const std::filesystem::path& path);

// Model file: JSON `news-signals-rf` version 1, carrying forest parameters,
// every tree, and the vocabulary, so predictions reproduce bit-exactly.
inline constexpr const char* kModelFormat = "news-signals-rf";
inline constexpr int kModelVersion = 1;

std::string model_to_json(const ForestModel& model, const Vocabulary& vocab);
std::pair<ForestModel, Vocabulary> model_from_json(const std::string& text);
void save_model(const std::filesystem::path& path, const ForestModel& model,
                const Vocabulary& vocab);
std::pair<ForestModel, Vocabulary> load_model(const std::filesystem::path& path);

// Report rendering shared by the CLI: a fixed-width table with one row per
// named run and columns precision / recall / f1 / %pos, plus a JSON form.
std::string report_to_json(const EvalReport& report);
std::string format_eval_table(const std::vector<std::pair<std::string, EvalReport>>& rows);

}  // namespace newsignals::tasks
