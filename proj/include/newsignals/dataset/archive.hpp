#pragma once

#include <filesystem>
#include <string>

#include "newsignals/dataset/dataset.hpp"
#include "newsignals/dataset/tar_gz.hpp"

namespace newsignals::dataset {

// Archive layout (gzip tar, members sorted by name):
//   metadata.json                   format_version, range, manifest per signal
//   signals/<qid>/series.csv        header `date,<series...>`, one row per tick
//   signals/<qid>/feed.jsonl        one document per line with feed/tick fields
// Member bytes depend only on dataset content and built_at, so a pinned
// built_at yields byte-identical archives.
std::string save_dataset_bytes(const SignalsDataset& dataset);
SignalsDataset load_dataset_bytes(const std::string& bytes);

void save_dataset(const SignalsDataset& dataset, const std::filesystem::path& path);
SignalsDataset load_dataset(const std::filesystem::path& path);

}  // namespace newsignals::dataset
