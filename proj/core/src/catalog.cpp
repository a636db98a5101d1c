#include "netforge/catalog/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "netforge/bytes.hpp"

namespace netforge::catalog {

namespace fs = std::filesystem;

std::string_view to_string(ImageArch a) {
    switch (a) {
        case ImageArch::bios32: return "bios32";
        case ImageArch::bios64: return "bios64";
        case ImageArch::uefi32: return "uefi32";
        case ImageArch::uefi64: return "uefi64";
    }
    return "?";
}

std::optional<ImageArch> parse_arch(std::string_view s) {
    if (s == "bios32") return ImageArch::bios32;
    if (s == "bios64") return ImageArch::bios64;
    if (s == "uefi32") return ImageArch::uefi32;
    if (s == "uefi64") return ImageArch::uefi64;
    return std::nullopt;
}

namespace {

bool valid_id(std::string_view id) {
    if (id.empty() || id.size() > 64) return false;
    for (char c : id) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                  c == '_' || c == '-' || c == '.';
        if (!ok) return false;
    }
    return true;
}

bool valid_display_name(std::string_view name) {
    if (name.empty() || name.size() > 128) return false;
    return is_printable_ascii(name) && name.find('|') == std::string_view::npos;
}

std::string entry_line(const ImageEntry& e) {
    std::string line;
    line += e.id;
    line += '|';
    line += e.display_name;
    line += '|';
    line += to_string(e.arch);
    line += '|';
    line += e.payload_path;
    line += '|';
    line += std::to_string(e.payload_size);
    line += '|';
    line += digest_hex(e.digest);
    line += '\n';
    return line;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        auto pos = s.find(sep);
        out.push_back(s.substr(0, pos));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return out;
}

// Flat key=value sidecar, '#' comments, keys: name, arch.
std::optional<std::pair<std::string, ImageArch>> parse_meta(const fs::path& meta_path,
                                                            std::string& why) {
    std::ifstream in(meta_path);
    if (!in) {
        why = "image.meta unreadable";
        return std::nullopt;
    }
    std::string name;
    std::optional<ImageArch> arch;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            why = "image.meta line without '=': " + line;
            return std::nullopt;
        }
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "name") {
            name = value;
        } else if (key == "arch") {
            arch = parse_arch(value);
            if (!arch) {
                why = "unknown arch '" + value + "'";
                return std::nullopt;
            }
        } else {
            why = "unknown image.meta key '" + key + "'";
            return std::nullopt;
        }
    }
    if (name.empty() || !arch) {
        why = "image.meta must set name and arch";
        return std::nullopt;
    }
    if (!valid_display_name(name)) {
        why = "image name must be printable ASCII without '|'";
        return std::nullopt;
    }
    return std::make_pair(name, *arch);
}

// Best-effort version recovery from a possibly corrupt menu header, so the
// monotone counter survives a damaged file.
std::uint64_t salvage_version(std::string_view text) {
    auto nl = text.find('\n');
    std::string_view header = text.substr(0, nl);
    auto fields = split(header, ' ');
    if (fields.size() < 2 || fields[0] != kMenuHeaderTag) return 0;
    std::string_view v = fields[1];
    if (v.size() < 2 || v.front() != 'v') return 0;
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data() + 1, v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) return 0;
    return out;
}

}  // namespace

Digest catalog_digest_of(const std::vector<ImageEntry>& entries) {
    Sha256 h;
    for (const auto& e : entries) h.update(entry_line(e));
    return h.finish();
}

std::string serialize_menu(const MenuManifest& manifest) {
    std::string out;
    out += kMenuHeaderTag;
    out += " v";
    out += std::to_string(manifest.version);
    out += ' ';
    out += digest_hex(manifest.catalog_digest);
    out += '\n';
    for (const auto& e : manifest.entries) out += entry_line(e);
    return out;
}

Result<MenuManifest, std::string> parse_menu(std::string_view text) {
    auto nl = text.find('\n');
    if (nl == std::string_view::npos) return std::string("menu: missing header line");
    auto header_fields = split(text.substr(0, nl), ' ');
    if (header_fields.size() != 3 || header_fields[0] != kMenuHeaderTag) {
        return std::string("menu: malformed header");
    }
    if (header_fields[1].size() < 2 || header_fields[1].front() != 'v') {
        return std::string("menu: malformed version field");
    }
    MenuManifest m;
    {
        std::string_view v = header_fields[1].substr(1);
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), m.version);
        if (ec != std::errc{} || p != v.data() + v.size()) {
            return std::string("menu: malformed version number");
        }
    }
    auto digest = digest_from_hex(header_fields[2]);
    if (!digest) return std::string("menu: malformed catalog digest");
    m.catalog_digest = *digest;

    std::string_view rest = text.substr(nl + 1);
    while (!rest.empty()) {
        auto line_end = rest.find('\n');
        if (line_end == std::string_view::npos) {
            return std::string("menu: entry line without newline");
        }
        std::string_view line = rest.substr(0, line_end);
        rest.remove_prefix(line_end + 1);
        auto fields = split(line, '|');
        if (fields.size() != 6) return std::string("menu: entry needs 6 fields");
        ImageEntry e;
        e.id = std::string(fields[0]);
        e.display_name = std::string(fields[1]);
        auto arch = parse_arch(fields[2]);
        if (!arch) return std::string("menu: unknown arch in entry " + e.id);
        e.arch = *arch;
        e.payload_path = std::string(fields[3]);
        {
            auto [p, ec] =
                std::from_chars(fields[4].data(), fields[4].data() + fields[4].size(),
                                e.payload_size);
            if (ec != std::errc{} || p != fields[4].data() + fields[4].size()) {
                return std::string("menu: malformed size in entry " + e.id);
            }
        }
        auto d = digest_from_hex(fields[5]);
        if (!d) return std::string("menu: malformed digest in entry " + e.id);
        e.digest = *d;
        m.entries.push_back(std::move(e));
    }
    if (!std::is_sorted(m.entries.begin(), m.entries.end(),
                        [](const ImageEntry& a, const ImageEntry& b) { return a.id < b.id; })) {
        return std::string("menu: entries not sorted by id");
    }
    if (catalog_digest_of(m.entries) != m.catalog_digest) {
        return std::string("menu: catalog digest does not match entries");
    }
    return m;
}

ScanResult scan_catalog(const fs::path& root) {
    ScanResult result;
    fs::path wia = root / kCatalogDirName;
    std::error_code ec;
    if (!fs::is_directory(wia, ec) || ec) {
        result.manifest.version = 0;
        result.manifest.catalog_digest = catalog_digest_of({});
        return result;  // empty catalog, nothing on disk to rewrite
    }

    std::vector<std::string> ids;
    for (const auto& entry : fs::directory_iterator(wia, ec)) {
        if (ec) break;
        if (!entry.is_directory()) continue;  // menu.txt, nbp.bin live here too
        ids.push_back(entry.path().filename().string());
    }
    std::sort(ids.begin(), ids.end());

    for (const std::string& id : ids) {
        fs::path dir = wia / id;
        if (!valid_id(id)) {
            result.diagnostics.push_back(id + ": invalid image id");
            continue;
        }
        fs::path payload = dir / kPayloadFileName;
        if (!fs::is_regular_file(payload, ec) || ec) {
            // The classic slip: leaving the capture output named install.wim.
            if (fs::is_regular_file(dir / "install.wim", ec)) {
                result.diagnostics.push_back(id + ": payload must be named install");
            } else {
                result.diagnostics.push_back(id + ": missing payload file 'install'");
            }
            continue;
        }
        std::string why;
        auto meta = parse_meta(dir / kMetaFileName, why);
        if (!meta) {
            result.diagnostics.push_back(id + ": " + why);
            continue;
        }
        ImageEntry e;
        e.id = id;
        e.display_name = meta->first;
        e.arch = meta->second;
        e.payload_path = std::string(kCatalogDirName) + "/" + id + "/" +
                         std::string(kPayloadFileName);
        e.payload_size = fs::file_size(payload, ec);
        if (ec) {
            result.diagnostics.push_back(id + ": payload unreadable");
            continue;
        }
        try {
            e.digest = Sha256::of_file(payload);
        } catch (const std::exception&) {
            result.diagnostics.push_back(id + ": payload unreadable");
            continue;
        }
        result.manifest.entries.push_back(std::move(e));
    }

    result.manifest.catalog_digest = catalog_digest_of(result.manifest.entries);

    // Rewrite menu.txt only when content changed; version is monotone.
    fs::path menu_path = wia / kMenuFileName;
    std::uint64_t old_version = 0;
    bool unchanged = false;
    if (fs::is_regular_file(menu_path, ec)) {
        std::ifstream in(menu_path, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string old_text = buf.str();
        if (auto old_menu = parse_menu(old_text); old_menu.ok()) {
            old_version = old_menu.value().version;
            unchanged = old_menu.value().catalog_digest == result.manifest.catalog_digest &&
                        old_menu.value().entries == result.manifest.entries;
        } else {
            old_version = salvage_version(old_text);
        }
    }

    if (unchanged) {
        result.manifest.version = old_version;
        result.menu_rewritten = false;
    } else {
        result.manifest.version = old_version + 1;
        std::ofstream out(menu_path, std::ios::binary | std::ios::trunc);
        out << serialize_menu(result.manifest);
        result.menu_rewritten = true;
    }
    return result;
}

VerifyStatus verify_image(const ImageEntry& entry, const fs::path& root) {
    fs::path payload = root / fs::path(entry.payload_path);
    std::error_code ec;
    if (!fs::is_regular_file(payload, ec) || ec) return VerifyStatus::vanished;
    try {
        return Sha256::of_file(payload) == entry.digest ? VerifyStatus::ok
                                                        : VerifyStatus::mismatch;
    } catch (const std::exception&) {
        return VerifyStatus::vanished;
    }
}

}  // namespace netforge::catalog
