#include "newsignals/core/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "newsignals/util/text.hpp"

namespace newsignals::core {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

constexpr int kWidth = 900;
constexpr int kHeight = 320;
constexpr int kMargin = 45;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void write_plot_csv(const Signal& signal, const std::filesystem::path& path) {
    if (!signal.is_aligned()) throw std::logic_error("plot: signal " + signal.id() + " is not aligned");
    auto out = open_out(path);
    out << "date";
    for (const auto& [name, ts] : signal.series()) out << ',' << name;
    out << '\n';
    for (Tick t = signal.start(); t < signal.end(); ++t) {
        out << t.to_string();
        for (const auto& [name, ts] : signal.series()) {
            out << ',' << util::format_double(ts.value_at(t));
        }
        out << '\n';
    }
}

void write_plot_svg(const Signal& signal, const std::filesystem::path& path) {
    if (!signal.is_aligned()) throw std::logic_error("plot: signal " + signal.id() + " is not aligned");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& [name, ts] : signal.series()) {
        for (double v : ts.values()) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (hi == lo) hi = lo + 1.0;  // flat series still get a visible line

    const auto n = static_cast<std::size_t>(signal.end() - signal.start());
    const double x_step = n > 1 ? double(kWidth - 2 * kMargin) / double(n - 1) : 0.0;
    const auto y_of = [&](double v) {
        return kMargin + (hi - v) / (hi - lo) * (kHeight - 2 * kMargin);
    };

    auto out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    out << "  <line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
        << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
        << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    out << "  <line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
        << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << kMargin << "\" y=\"" << kMargin - 18
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << signal.name() << " ["
        << signal.start().to_string() << ", " << signal.end().to_string() << ")</text>\n";

    std::size_t color = 0;
    int legend_y = kMargin;
    for (const auto& [name, ts] : signal.series()) {
        const char* stroke = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (i) out << ' ';
            out << fmt_coord(kMargin + x_step * double(i)) << ',' << fmt_coord(y_of(ts[i]));
        }
        out << "\"/>\n";
        out << "  <text x=\"" << kWidth - kMargin - 160 << "\" y=\"" << legend_y
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << stroke << "\">" << name
            << "</text>\n";
        legend_y += 16;
        ++color;
    }
    out << "</svg>\n";
}

void export_plot(const Signal& signal, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_plot_csv(signal, out_dir / "plot.csv");
    write_plot_svg(signal, out_dir / "plot.svg");
}

}  // namespace newsignals::core
