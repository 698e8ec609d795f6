#include "newsignals/dataset/archive.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "newsignals/util/text.hpp"

namespace newsignals::dataset {

namespace {

using nlohmann::json;

bool has_field(const std::vector<std::string>& fields, const std::string& name) {
    return std::find(fields.begin(), fields.end(), name) != fields.end();
}

json metadata_json(const SignalsDataset& dataset) {
    const DatasetMetadata& meta = dataset.metadata();
    json signals = json::object();
    for (const auto& [qid, signal] : dataset.signals()) {
        json series = json::array();
        for (const auto& [name, ts] : signal.series()) series.push_back(name);
        json feeds = json::array();
        for (const auto& [name, feed] : signal.feeds()) feeds.push_back(name);
        signals[qid] = {{"name", signal.name()},
                        {"params", signal.params()},
                        {"series", std::move(series)},
                        {"feeds", std::move(feeds)}};
    }
    return {{"format_version", kArchiveFormatVersion},
            {"name", meta.name},
            {"start", meta.start.to_string()},
            {"end", meta.end.to_string()},
            {"built_at", meta.built_at},
            {"tool_version", meta.tool_version},
            {"document_fields", meta.document_fields},
            {"signals", std::move(signals)}};
}

std::string series_csv(const core::Signal& signal, core::Tick start, core::Tick end) {
    std::string out = "date";
    for (const auto& [name, ts] : signal.series()) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (core::Tick t = start; t < end; ++t) {
        out += t.to_string();
        for (const auto& [name, ts] : signal.series()) {
            out += ',';
            out += util::format_double(ts.value_at(t));
        }
        out += '\n';
    }
    return out;
}

std::string feed_jsonl(const core::Signal& signal, const std::vector<std::string>& fields) {
    const bool keep_body = has_field(fields, "body");
    const bool keep_metadata = has_field(fields, "metadata");
    std::string out;
    for (const auto& [feed_name, feed] : signal.feeds()) {
        for (const auto& [tick, docs] : feed.buckets()) {
            for (const auto& doc : docs) {
                json line = {{"feed", feed_name},
                             {"tick", tick.to_string()},
                             {"id", doc.id},
                             {"published_at", core::format_timestamp(doc.published_at)},
                             {"title", doc.title}};
                if (keep_body && doc.body) line["body"] = *doc.body;
                if (keep_metadata) line["metadata"] = doc.metadata;
                out += line.dump();
                out += '\n';
            }
        }
    }
    return out;
}

[[noreturn]] void member_error(const std::string& member, const std::string& what) {
    throw ArchiveError("archive: " + member + ": " + what);
}

std::vector<std::string> read_header(const std::string& member, const std::string& line) {
    auto columns = util::split(line, ',');
    if (columns.empty() || columns[0] != "date") member_error(member, "bad CSV header");
    columns.erase(columns.begin());
    return columns;
}

void load_series(const std::string& member, const std::string& text,
                 const std::vector<std::string>& expected_names, core::Tick start, core::Tick end,
                 core::Signal& signal) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) member_error(member, "empty file");
    const auto columns = read_header(member, line);
    if (columns != expected_names) member_error(member, "columns do not match the manifest");

    const auto n_days = static_cast<std::size_t>(end - start);
    std::vector<std::vector<double>> values(columns.size());
    for (auto& v : values) v.reserve(n_days);
    core::Tick expected = start;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = util::split(line, ',');
        if (cells.size() != columns.size() + 1) {
            member_error(member, "line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(columns.size() + 1) + " cells");
        }
        core::Tick tick;
        try {
            tick = core::Tick::parse(cells[0]);
        } catch (const std::exception& e) {
            member_error(member, "line " + std::to_string(line_no) + ": " + e.what());
        }
        if (expected >= end) member_error(member, "more rows than ticks in range");
        if (tick != expected) {
            if (expected > start && tick == expected - 1) {
                member_error(member, "duplicate date " + tick.to_string());
            }
            member_error(member, "expected date " + expected.to_string() + ", got " +
                                     tick.to_string());
        }
        for (std::size_t c = 0; c < columns.size(); ++c) {
            try {
                values[c].push_back(util::parse_double(cells[c + 1]));
            } catch (const std::exception& e) {
                member_error(member, "line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        ++expected;
    }
    if (expected != end) member_error(member, "missing rows: stopped at " + expected.to_string());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        signal.add_series(core::TimeSeries(columns[c], start, std::move(values[c])));
    }
}

void load_feeds(const std::string& member, const std::string& text,
                std::map<std::string, core::Feed>& feeds) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::exception& e) {
            member_error(member, "line " + std::to_string(line_no) + ": " + e.what());
        }
        try {
            const auto feed_name = doc.at("feed").get<std::string>();
            auto it = feeds.find(feed_name);
            if (it == feeds.end()) {
                member_error(member, "line " + std::to_string(line_no) + ": feed '" + feed_name +
                                         "' is not in the manifest");
            }
            core::Document d;
            d.id = doc.at("id").get<std::string>();
            d.published_at = core::parse_timestamp(doc.at("published_at").get<std::string>());
            d.title = doc.at("title").get<std::string>();
            if (doc.contains("body")) d.body = doc["body"].get<std::string>();
            if (doc.contains("metadata")) {
                d.metadata = doc["metadata"].get<std::map<std::string, std::string>>();
            }
            const core::Tick tick = core::Tick::parse(doc.at("tick").get<std::string>());
            if (d.day() != tick) {
                member_error(member, "line " + std::to_string(line_no) + ": tick " +
                                         tick.to_string() + " does not match published_at");
            }
            it->second.add(std::move(d));
        } catch (const ArchiveError&) {
            throw;
        } catch (const std::exception& e) {
            member_error(member, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

}  // namespace

std::string save_dataset_bytes(const SignalsDataset& dataset) {
    const DatasetMetadata& meta = dataset.metadata();
    std::vector<TarMember> members;
    members.push_back({"metadata.json", metadata_json(dataset).dump(2) + "\n"});
    for (const auto& [qid, signal] : dataset.signals()) {
        members.push_back(
            {"signals/" + qid + "/series.csv", series_csv(signal, meta.start, meta.end)});
        if (!signal.feeds().empty()) {
            members.push_back(
                {"signals/" + qid + "/feed.jsonl", feed_jsonl(signal, meta.document_fields)});
        }
    }
    return write_tar_gz(members, core::parse_timestamp(meta.built_at));
}

SignalsDataset load_dataset_bytes(const std::string& bytes) {
    const auto members = read_tar_gz(bytes);
    std::map<std::string, const std::string*> by_name;
    for (const auto& m : members) by_name[m.name] = &m.data;

    auto meta_it = by_name.find("metadata.json");
    if (meta_it == by_name.end()) throw ArchiveError("archive: missing metadata.json");
    json meta;
    try {
        meta = json::parse(*meta_it->second);
    } catch (const json::exception& e) {
        throw ArchiveError(std::string("archive: metadata.json: ") + e.what());
    }

    try {
        const int version = meta.at("format_version").get<int>();
        if (version != kArchiveFormatVersion) {
            throw ArchiveError("archive: unsupported format_version " + std::to_string(version) +
                               " (expected " + std::to_string(kArchiveFormatVersion) + ")");
        }
        DatasetMetadata metadata;
        metadata.name = meta.at("name").get<std::string>();
        metadata.start = core::Tick::parse(meta.at("start").get<std::string>());
        metadata.end = core::Tick::parse(meta.at("end").get<std::string>());
        metadata.built_at = meta.at("built_at").get<std::string>();
        metadata.tool_version = meta.at("tool_version").get<std::string>();
        metadata.document_fields = meta.at("document_fields").get<std::vector<std::string>>();
        SignalsDataset dataset(std::move(metadata));
        const core::Tick start = dataset.metadata().start;
        const core::Tick end = dataset.metadata().end;

        for (const auto& [qid, manifest] : meta.at("signals").items()) {
            core::Signal signal(qid, manifest.at("name").get<std::string>(),
                                manifest.at("params").get<std::map<std::string, std::string>>());

            const std::string series_member = "signals/" + qid + "/series.csv";
            auto series_it = by_name.find(series_member);
            if (series_it == by_name.end()) {
                throw ArchiveError("archive: missing member " + series_member);
            }
            load_series(series_member, *series_it->second,
                        manifest.at("series").get<std::vector<std::string>>(), start, end, signal);

            std::map<std::string, core::Feed> feeds;
            for (const auto& feed_name : manifest.at("feeds")) {
                feeds.emplace(feed_name.get<std::string>(),
                              core::Feed(feed_name.get<std::string>(), start, end));
            }
            const std::string feed_member = "signals/" + qid + "/feed.jsonl";
            if (auto feed_it = by_name.find(feed_member); feed_it != by_name.end()) {
                load_feeds(feed_member, *feed_it->second, feeds);
            } else if (!feeds.empty()) {
                throw ArchiveError("archive: missing member " + feed_member);
            }
            for (auto& [name, feed] : feeds) signal.add_feed(std::move(feed));
            dataset.add_signal(std::move(signal));
        }
        return dataset;
    } catch (const ArchiveError&) {
        throw;
    } catch (const std::exception& e) {
        throw ArchiveError(std::string("archive: metadata.json: ") + e.what());
    }
}

void save_dataset(const SignalsDataset& dataset, const std::filesystem::path& path) {
    write_binary_file(path, save_dataset_bytes(dataset));
}

SignalsDataset load_dataset(const std::filesystem::path& path) {
    return load_dataset_bytes(read_binary_file(path));
}

}  // namespace newsignals::dataset
