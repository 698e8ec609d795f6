#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "newsignals/sources/http.hpp"

namespace testhelpers {

// std::span has no operator==; materialize for comparisons against vectors.
inline std::vector<double> as_vector(std::span<const double> values) {
    return {values.begin(), values.end()};
}

// Self-cleaning unique directory under the system temp root.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        const auto stamp =
            std::chrono::steady_clock::now().time_since_epoch().count() * 1000 + counter.fetch_add(1);
        path_ = std::filesystem::temp_directory_path() /
                ("newsignals-" + tag + "-" + std::to_string(stamp));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

// Scripted HttpClient: pops the next canned action per request and records
// every URL it saw.
class FakeHttpClient : public newsignals::sources::HttpClient {
public:
    using Action = std::function<newsignals::sources::HttpResponse(const std::string& url)>;

    static Action respond(int status, std::string body,
                          std::map<std::string, std::string> headers = {}) {
        return [status, body = std::move(body),
                headers = std::move(headers)](const std::string&) {
            return newsignals::sources::HttpResponse{status, body, headers};
        };
    }
    static Action fail(std::string message) {
        return [message = std::move(message)](const std::string&) -> newsignals::sources::HttpResponse {
            throw newsignals::sources::TransportError(message);
        };
    }

    void push(Action action) { script_.push_back(std::move(action)); }
    void set_default(Action action) { default_ = std::move(action); }

    newsignals::sources::HttpResponse get(
        const std::string& url, const newsignals::sources::HeaderList& headers) override {
        urls.push_back(url);
        last_headers = headers;
        if (cursor_ < script_.size()) return script_[cursor_++](url);
        if (default_) return default_(url);
        throw newsignals::sources::TransportError("fake client: no scripted response for " + url);
    }

    std::size_t request_count() const { return urls.size(); }

    std::vector<std::string> urls;
    newsignals::sources::HeaderList last_headers;

private:
    std::vector<Action> script_;
    std::size_t cursor_ = 0;
    Action default_;
};

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the CLI binary with stdout/stderr captured to files.
inline CliResult run_cli(const std::vector<std::string>& args,
                         const std::filesystem::path& workdir = {}) {
    const TempDir capture("cli-capture");
    const auto out_path = capture / "out";
    const auto err_path = capture / "err";

    std::string command;
    if (!workdir.empty()) command += "cd '" + workdir.string() + "' && ";
    // Keep ambient cache/endpoint settings out of the subprocess.
    command += "NEWS_SIGNALS_CACHE_DIR= SPARQL_ENDPOINT= ";
    command += "'" + std::string(NS_CLI_BIN) + "'";
    for (const auto& arg : args) command += " '" + arg + "'";
    command += " > '" + out_path.string() + "' 2> '" + err_path.string() + "'";

    const int raw = std::system(command.c_str());
    CliResult result;
    result.exit_code = (raw == -1) ? -1 : WEXITSTATUS(raw);
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    return result;
}

}  // namespace testhelpers
