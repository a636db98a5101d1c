#include "netforge/catalog/archive.hpp"

#include <zlib.h>

#include <algorithm>
#include <fstream>

#include "netforge/bytes.hpp"

namespace netforge::catalog {

namespace fs = std::filesystem;

namespace {

constexpr int kDeflateLevel = 6;  // fixed so re-capture is byte-identical

std::vector<std::uint8_t> deflate_bytes(std::span<const std::uint8_t> input) {
    uLongf bound = compressBound(static_cast<uLong>(input.size()));
    std::vector<std::uint8_t> out(bound);
    int rc = compress2(out.data(), &bound, input.data(), static_cast<uLong>(input.size()),
                       kDeflateLevel);
    if (rc != Z_OK) throw ArchiveError(ArchiveError::Kind::io, "deflate failed");
    out.resize(bound);
    return out;
}

std::vector<std::uint8_t> inflate_bytes(std::span<const std::uint8_t> input,
                                        std::uint64_t expected_size, const std::string& path) {
    std::vector<std::uint8_t> out(expected_size);
    uLongf got = static_cast<uLongf>(expected_size);
    int rc = uncompress(out.data(), &got, input.data(), static_cast<uLong>(input.size()));
    if (rc != Z_OK || got != expected_size) {
        throw ArchiveError(ArchiveError::Kind::corrupt, "corrupt payload for " + path, path);
    }
    return out;
}

std::vector<std::uint8_t> read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ArchiveError(ArchiveError::Kind::source_unreadable, "cannot read " + p.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw ArchiveError(ArchiveError::Kind::source_unreadable, "read error on " + p.string());
    }
    return bytes;
}

/// Writes to a file while folding every byte into the trailer hash.
class HashingWriter {
public:
    explicit HashingWriter(const fs::path& p) : out_(p, std::ios::binary) {
        if (!out_) throw ArchiveError(ArchiveError::Kind::io, "cannot write " + p.string());
    }

    void write(std::span<const std::uint8_t> bytes) {
        out_.write(reinterpret_cast<const char*>(bytes.data()),
                   static_cast<std::streamsize>(bytes.size()));
        hash_.update(bytes);
    }

    Digest seal() {
        Digest d = hash_.finish();
        out_.write(reinterpret_cast<const char*>(d.data()), static_cast<std::streamsize>(d.size()));
        out_.flush();
        if (!out_) throw ArchiveError(ArchiveError::Kind::io, "archive write failed");
        return d;
    }

private:
    std::ofstream out_;
    Sha256 hash_;
};

}  // namespace

ArchiveSummary capture_tree(const fs::path& source_dir, const fs::path& out_path) {
    std::error_code ec;
    if (!fs::is_directory(source_dir, ec) || ec) {
        throw ArchiveError(ArchiveError::Kind::source_unreadable,
                           source_dir.string() + " is not a readable directory");
    }

    ArchiveSummary summary;
    std::vector<std::string> paths;
    std::vector<fs::path> absolute;
    for (auto it = fs::recursive_directory_iterator(
             source_dir, fs::directory_options::skip_permission_denied, ec);
         it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (ec) {
            throw ArchiveError(ArchiveError::Kind::source_unreadable,
                               "walk failed under " + source_dir.string());
        }
        const fs::directory_entry& entry = *it;
        std::string rel = fs::relative(entry.path(), source_dir).generic_string();
        if (entry.is_symlink()) {
            summary.diagnostics.push_back("symlink skipped: " + rel);
            if (entry.is_directory()) it.disable_recursion_pending();
            continue;
        }
        if (entry.is_directory()) continue;  // directories are implied by paths
        if (!entry.is_regular_file()) {
            summary.diagnostics.push_back("special file skipped: " + rel);
            continue;
        }
        paths.push_back(rel);
        absolute.push_back(entry.path());
    }

    // Canonical order: record paths sorted byte-wise.
    std::vector<std::size_t> order(paths.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return paths[a] < paths[b]; });

    HashingWriter writer(out_path);
    writer.write(kArchiveMagic);
    {
        ByteWriter w;
        w.u32be(static_cast<std::uint32_t>(paths.size()));
        writer.write(w.bytes());
    }
    for (std::size_t idx : order) {
        const std::string& rel = paths[idx];
        std::vector<std::uint8_t> content = read_file(absolute[idx]);
        auto perms = fs::status(absolute[idx]).permissions();
        std::uint32_t mode = static_cast<std::uint32_t>(perms) & 0777;
        Digest content_digest = Sha256::of(content);
        std::vector<std::uint8_t> compressed = deflate_bytes(content);

        ByteWriter w;
        w.u16be(static_cast<std::uint16_t>(rel.size()));
        w.raw(rel);
        w.u32be(mode);
        w.u64be(content.size());
        w.raw(std::span<const std::uint8_t>(content_digest.data(), content_digest.size()));
        w.u64be(compressed.size());
        writer.write(w.bytes());
        writer.write(compressed);

        summary.total_bytes += content.size();
        ++summary.file_count;
    }
    summary.trailer = writer.seal();
    summary.empty_source = summary.file_count == 0;
    return summary;
}

std::uint64_t extract_archive(const fs::path& archive_path, const fs::path& dest_dir) {
    std::error_code ec;
    if (fs::exists(dest_dir, ec) && !fs::is_empty(dest_dir, ec)) {
        throw ArchiveError(ArchiveError::Kind::dest_not_empty,
                           dest_dir.string() + " exists and is not empty");
    }

    std::vector<std::uint8_t> bytes;
    try {
        bytes = read_file(archive_path);
    } catch (const ArchiveError&) {
        throw ArchiveError(ArchiveError::Kind::io, "cannot read " + archive_path.string());
    }
    if (bytes.size() < kArchiveMagic.size() + 4 + 32 ||
        !std::equal(kArchiveMagic.begin(), kArchiveMagic.end(), bytes.begin())) {
        throw ArchiveError(ArchiveError::Kind::bad_magic,
                           archive_path.string() + " is not an image archive");
    }

    std::span<const std::uint8_t> body(bytes.data(), bytes.size() - 32);
    std::span<const std::uint8_t> trailer(bytes.data() + bytes.size() - 32, 32);
    Digest actual = Sha256::of(body);
    ByteReader r(body);
    r.raw(kArchiveMagic.size());
    std::uint32_t count = *r.u32be();

    fs::create_directories(dest_dir);
    std::uint64_t extracted = 0;
    auto corrupt = [&](const std::string& what, const std::string& path = {}) -> ArchiveError {
        fs::remove_all(dest_dir, ec);
        return ArchiveError(ArchiveError::Kind::corrupt, what, path);
    };

    for (std::uint32_t i = 0; i < count; ++i) {
        auto path_len = r.u16be();
        if (!path_len) throw corrupt("record header truncated");
        auto path_bytes = r.raw(*path_len);
        if (!path_bytes) throw corrupt("record path truncated");
        std::string rel(reinterpret_cast<const char*>(path_bytes->data()), path_bytes->size());
        auto mode = r.u32be();
        auto size = r.u64be();
        auto digest_bytes = r.raw(32);
        if (!mode || !size || !digest_bytes) throw corrupt("record header truncated", rel);
        auto comp_len = r.u64be();
        if (!comp_len || r.remaining() < *comp_len) throw corrupt("record payload truncated", rel);
        auto compressed = r.raw(static_cast<std::size_t>(*comp_len));

        // Reject hostile paths before touching the filesystem.
        if (rel.empty() || rel.front() == '/' || rel.find("..") != std::string::npos) {
            throw corrupt("unsafe record path: " + rel, rel);
        }

        std::vector<std::uint8_t> content = [&] {
            try {
                return inflate_bytes(*compressed, *size, rel);
            } catch (const ArchiveError&) {
                throw corrupt("corrupt payload for " + rel, rel);
            }
        }();
        Digest expected{};
        std::copy(digest_bytes->begin(), digest_bytes->end(), expected.begin());
        if (Sha256::of(content) != expected) {
            throw corrupt("digest mismatch for " + rel, rel);
        }

        fs::path target = dest_dir / fs::path(rel);
        fs::create_directories(target.parent_path(), ec);
        std::ofstream out(target, std::ios::binary);
        if (!out) throw ArchiveError(ArchiveError::Kind::io, "cannot write " + target.string());
        out.write(reinterpret_cast<const char*>(content.data()),
                  static_cast<std::streamsize>(content.size()));
        out.close();
        fs::permissions(target, static_cast<fs::perms>(*mode & 0777),
                        fs::perm_options::replace, ec);
        ++extracted;
    }

    if (!r.exhausted()) throw corrupt("trailing bytes after last record");
    Digest stored{};
    std::copy(trailer.begin(), trailer.end(), stored.begin());
    if (actual != stored) throw corrupt("whole-archive digest mismatch");
    return extracted;
}

}  // namespace netforge::catalog
