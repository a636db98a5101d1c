#include "netforge/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace netforge {

namespace {

std::optional<std::uint64_t> parse_u64(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (!s.empty()) {
        auto comma = s.find(',');
        out.push_back(s.substr(0, comma));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

[[noreturn]] void parse_fail(int line, const std::string& message) {
    throw ConfigError(ConfigError::Kind::parse, line,
                      "line " + std::to_string(line) + ": " + message);
}

}  // namespace

ServerConfig parse_config(std::string_view text, const std::string& origin) {
    ServerConfig cfg;
    bool saw_bind = false, saw_root = false, saw_mode = false;

    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) parse_fail(line_no, "expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key.empty()) parse_fail(line_no, "empty key");

        if (key == "bind_address") {
            auto v = Ipv4::parse(value);
            if (!v) parse_fail(line_no, "bad bind_address '" + value + "'");
            cfg.bind_address = *v;
            saw_bind = true;
        } else if (key == "tftp_root") {
            if (value.empty()) parse_fail(line_no, "empty tftp_root");
            cfg.tftp_root = value;
            saw_root = true;
        } else if (key == "mode") {
            if (value == "full-dhcp") {
                cfg.mode = dhcp::ServiceMode::full_dhcp;
            } else if (value == "proxy") {
                cfg.mode = dhcp::ServiceMode::proxy;
            } else {
                parse_fail(line_no, "mode must be full-dhcp or proxy");
            }
            saw_mode = true;
        } else if (key == "pool_first") {
            auto v = Ipv4::parse(value);
            if (!v) parse_fail(line_no, "bad pool_first '" + value + "'");
            cfg.pool_first = *v;
        } else if (key == "pool_mask") {
            auto v = Ipv4::parse(value);
            if (!v) parse_fail(line_no, "bad pool_mask '" + value + "'");
            cfg.pool_mask = *v;
        } else if (key == "pool_size") {
            auto v = parse_u64(value);
            if (!v || *v == 0 || *v > 1'000'000) parse_fail(line_no, "bad pool_size '" + value + "'");
            cfg.pool_size = static_cast<std::uint32_t>(*v);
        } else if (key == "lease_ttl") {
            auto v = parse_u64(value);
            if (!v || *v == 0) parse_fail(line_no, "bad lease_ttl '" + value + "'");
            cfg.lease_ttl = std::chrono::seconds(*v);
        } else if (key == "mac_allow_list") {
            std::vector<MacAddr> macs;
            for (auto item : split_list(value)) {
                auto mac = MacAddr::parse(item);
                if (!mac) parse_fail(line_no, "bad MAC '" + std::string(item) + "'");
                macs.push_back(*mac);
            }
            cfg.mac_allow_list = std::move(macs);
        } else if (key == "log_path") {
            if (value.empty()) parse_fail(line_no, "empty log_path");
            cfg.log_path = value;
        } else if (key == "status_path") {
            if (value.empty()) parse_fail(line_no, "empty status_path");
            cfg.status_path = value;
        } else if (key == "dhcp_port" || key == "tftp_port" || key == "boot_port") {
            auto v = parse_u64(value);
            if (!v || *v == 0 || *v > 65535) parse_fail(line_no, "bad " + key + " '" + value + "'");
            auto port = static_cast<std::uint16_t>(*v);
            if (key == "dhcp_port") cfg.dhcp_port = port;
            else if (key == "tftp_port") cfg.tftp_port = port;
            else cfg.boot_port = port;
        } else {
            parse_fail(line_no, "unknown key '" + key + "'");
        }
    }

    auto constraint_fail = [&](const std::string& message) {
        throw ConfigError(ConfigError::Kind::constraint, 0, origin + ": " + message);
    };
    if (!saw_bind) constraint_fail("bind_address is required");
    if (!saw_root) constraint_fail("tftp_root is required");
    if (!saw_mode) constraint_fail("mode is required");
    if (cfg.mode == dhcp::ServiceMode::full_dhcp) {
        if (!cfg.pool_first || !cfg.pool_mask || !cfg.pool_size) {
            constraint_fail("mode=full-dhcp requires pool_first, pool_mask and pool_size");
        }
    } else {
        if (cfg.pool_first || cfg.pool_mask || cfg.pool_size) {
            constraint_fail("mode=proxy forbids pool_first/pool_mask/pool_size");
        }
    }
    return cfg;
}

ServerConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(ConfigError::Kind::parse, 0, "cannot open config " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

std::string format_config(const ServerConfig& config) {
    std::string out;
    out += "bind_address=" + config.bind_address.to_string() + "\n";
    out += "tftp_root=" + config.tftp_root.string() + "\n";
    out += std::string("mode=") +
           (config.mode == dhcp::ServiceMode::full_dhcp ? "full-dhcp" : "proxy") + "\n";
    if (config.pool_first) out += "pool_first=" + config.pool_first->to_string() + "\n";
    if (config.pool_mask) out += "pool_mask=" + config.pool_mask->to_string() + "\n";
    if (config.pool_size) out += "pool_size=" + std::to_string(*config.pool_size) + "\n";
    out += "lease_ttl=" + std::to_string(config.lease_ttl.count()) + "\n";
    if (config.mac_allow_list) {
        out += "mac_allow_list=";
        for (std::size_t i = 0; i < config.mac_allow_list->size(); ++i) {
            if (i) out += ',';
            out += (*config.mac_allow_list)[i].to_string();
        }
        out += "\n";
    }
    if (config.log_path) out += "log_path=" + config.log_path->string() + "\n";
    out += "dhcp_port=" + std::to_string(config.dhcp_port) + "\n";
    out += "tftp_port=" + std::to_string(config.tftp_port) + "\n";
    out += "boot_port=" + std::to_string(config.boot_port) + "\n";
    if (config.status_path) out += "status_path=" + config.status_path->string() + "\n";
    return out;
}

}  // namespace netforge
