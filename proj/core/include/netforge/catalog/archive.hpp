#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "netforge/sha256.hpp"

namespace netforge::catalog {

// "NFIMG001"
inline constexpr std::array<std::uint8_t, 8> kArchiveMagic{'N', 'F', 'I', 'M', 'G', '0', '0', '1'};

/// Deployable image container, the desk-scale stand-in for a WIM: a canonical
/// (path-sorted) list of per-file records, each deflate-compressed and
/// digest-protected, sealed by a whole-archive digest.
///
/// Layout, all integers big-endian:
///   magic[8] | u32 file_count
///   per record: u16 path_len | path | u32 mode | u64 size | digest[32]
///               | u64 compressed_len | compressed bytes
///   trailer: sha256 over every preceding byte
struct ArchiveSummary {
    std::uint64_t file_count = 0;
    std::uint64_t total_bytes = 0;  // uncompressed payload bytes
    Digest trailer{};
    bool empty_source = false;
    std::vector<std::string> diagnostics;  // skipped entries (symlinks etc.)
};

class ArchiveError : public std::runtime_error {
public:
    enum class Kind { source_unreadable, bad_magic, corrupt, dest_not_empty, io };

    ArchiveError(Kind kind, std::string message, std::string path = {})
        : std::runtime_error(std::move(message)), kind_(kind), path_(std::move(path)) {}

    Kind kind() const { return kind_; }
    /// Offending archive-relative path, when the failure is attributable.
    const std::string& path() const { return path_; }

private:
    Kind kind_;
    std::string path_;
};

/// Walks source_dir deterministically (paths sorted byte-wise), writes the
/// archive to out_path. Symbolic links are skipped and reported.
ArchiveSummary capture_tree(const std::filesystem::path& source_dir,
                            const std::filesystem::path& out_path);

/// Recreates the tree under dest_dir (which must be empty or absent),
/// verifying every record digest and the trailer. Returns the file count.
std::uint64_t extract_archive(const std::filesystem::path& archive_path,
                              const std::filesystem::path& dest_dir);

}  // namespace netforge::catalog
