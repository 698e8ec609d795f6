#pragma once

#include <filesystem>

#include "newsignals/core/signal.hpp"

namespace newsignals::core {

// Writes out_dir/plot.csv (header "date,<series names...>") and
// out_dir/plot.svg (one polyline per series). Feeds are never plotted.
void export_plot(const Signal& signal, const std::filesystem::path& out_dir);

void write_plot_csv(const Signal& signal, const std::filesystem::path& path);
void write_plot_svg(const Signal& signal, const std::filesystem::path& path);

}  // namespace newsignals::core
