#include "newsignals/dataset/tar_gz.hpp"

#include <zlib.h>

#include <array>
#include <cstring>
#include <fstream>

namespace newsignals::dataset {

namespace {

constexpr std::size_t kBlock = 512;

void write_octal(char* field, std::size_t width, std::uint64_t value) {
    // width includes the terminating NUL
    std::snprintf(field, width, "%0*llo", static_cast<int>(width - 1),
                  static_cast<unsigned long long>(value));
}

std::array<char, kBlock> make_header(const TarMember& member, std::int64_t mtime) {
    if (member.name.size() > 99) {
        throw ArchiveError("tar: member name too long: " + member.name);
    }
    std::array<char, kBlock> h{};
    std::memcpy(h.data(), member.name.data(), member.name.size());
    write_octal(h.data() + 100, 8, 0644);                    // mode
    write_octal(h.data() + 108, 8, 0);                       // uid
    write_octal(h.data() + 116, 8, 0);                       // gid
    write_octal(h.data() + 124, 12, member.data.size());     // size
    write_octal(h.data() + 136, 12, static_cast<std::uint64_t>(mtime < 0 ? 0 : mtime));
    std::memset(h.data() + 148, ' ', 8);                     // checksum placeholder
    h[156] = '0';                                            // regular file
    std::memcpy(h.data() + 257, "ustar", 6);                 // magic
    h[263] = '0';
    h[264] = '0';                                            // version "00"

    unsigned sum = 0;
    for (unsigned char c : h) sum += c;
    write_octal(h.data() + 148, 7, sum);
    h[155] = ' ';
    return h;
}

std::uint64_t read_octal(const char* field, std::size_t width) {
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < width; ++i) {
        const char c = field[i];
        if (c == '\0') break;
        if (c == ' ') continue;
        if (c < '0' || c > '7') throw ArchiveError("tar: bad octal field");
        value = value * 8 + static_cast<std::uint64_t>(c - '0');
    }
    return value;
}

bool zero_block(const char* p) {
    for (std::size_t i = 0; i < kBlock; ++i) {
        if (p[i] != '\0') return false;
    }
    return true;
}

}  // namespace

std::string write_tar_gz(const std::vector<TarMember>& members, std::int64_t mtime) {
    std::string tar;
    for (const auto& member : members) {
        const auto header = make_header(member, mtime);
        tar.append(header.data(), kBlock);
        tar.append(member.data);
        const std::size_t pad = (kBlock - member.data.size() % kBlock) % kBlock;
        tar.append(pad, '\0');
    }
    tar.append(2 * kBlock, '\0');
    return gzip_compress(tar);
}

std::vector<TarMember> read_tar_gz(const std::string& bytes) {
    const std::string tar = gzip_decompress(bytes);
    std::vector<TarMember> members;
    std::size_t offset = 0;
    while (offset + kBlock <= tar.size()) {
        const char* header = tar.data() + offset;
        if (zero_block(header)) break;

        std::string name(header, strnlen(header, 100));
        const std::uint64_t stored_sum = read_octal(header + 148, 8);
        unsigned sum = 0;
        for (std::size_t i = 0; i < kBlock; ++i) {
            sum += (i >= 148 && i < 156) ? static_cast<unsigned char>(' ')
                                         : static_cast<unsigned char>(header[i]);
        }
        if (sum != stored_sum) {
            throw ArchiveError("tar: checksum mismatch in member header '" + name + "'");
        }
        const std::uint64_t size = read_octal(header + 124, 12);
        offset += kBlock;
        if (offset + size > tar.size()) {
            throw ArchiveError("tar: truncated member '" + name + "'");
        }
        if (header[156] == '0' || header[156] == '\0') {
            members.push_back({std::move(name), tar.substr(offset, size)});
        }
        offset += size + (kBlock - size % kBlock) % kBlock;
    }
    return members;
}

std::string gzip_compress(const std::string& data) {
    z_stream strm{};
    if (deflateInit2(&strm, Z_BEST_COMPRESSION, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) !=
        Z_OK) {
        throw ArchiveError("gzip: deflateInit2 failed");
    }
    std::string out;
    out.resize(deflateBound(&strm, static_cast<uLong>(data.size())) + 32);
    strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    strm.avail_in = static_cast<uInt>(data.size());
    strm.next_out = reinterpret_cast<Bytef*>(out.data());
    strm.avail_out = static_cast<uInt>(out.size());
    const int rc = deflate(&strm, Z_FINISH);
    deflateEnd(&strm);
    if (rc != Z_STREAM_END) throw ArchiveError("gzip: compression failed");
    out.resize(out.size() - strm.avail_out);
    return out;
}

std::string gzip_decompress(const std::string& data) {
    z_stream strm{};
    if (inflateInit2(&strm, 15 + 16) != Z_OK) throw ArchiveError("gzip: inflateInit2 failed");
    std::string out;
    std::array<char, 1 << 16> chunk;
    strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    strm.avail_in = static_cast<uInt>(data.size());
    int rc = Z_OK;
    do {
        strm.next_out = reinterpret_cast<Bytef*>(chunk.data());
        strm.avail_out = static_cast<uInt>(chunk.size());
        rc = inflate(&strm, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&strm);
            throw ArchiveError("gzip: corrupt stream");
        }
        out.append(chunk.data(), chunk.size() - strm.avail_out);
    } while (rc != Z_STREAM_END && strm.avail_in > 0);
    inflateEnd(&strm);
    if (rc != Z_STREAM_END) throw ArchiveError("gzip: truncated stream");
    return out;
}

std::string read_binary_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArchiveError("cannot open " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

void write_binary_file(const std::filesystem::path& path, const std::string& data) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArchiveError("cannot write " + path.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw ArchiveError("short write to " + path.string());
}

}  // namespace newsignals::dataset
