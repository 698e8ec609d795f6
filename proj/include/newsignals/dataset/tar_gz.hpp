#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace newsignals::dataset {

struct ArchiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TarMember {
    std::string name;
    std::string data;
};

// Minimal ustar + gzip. Headers carry fixed mode/uid/gid and the supplied
// mtime, so identical members always produce identical bytes.
std::string write_tar_gz(const std::vector<TarMember>& members, std::int64_t mtime);
std::vector<TarMember> read_tar_gz(const std::string& bytes);

std::string gzip_compress(const std::string& data);
std::string gzip_decompress(const std::string& data);

std::string read_binary_file(const std::filesystem::path& path);
void write_binary_file(const std::filesystem::path& path, const std::string& data);

}  // namespace newsignals::dataset
