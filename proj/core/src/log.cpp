#include "netforge/log.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>

namespace netforge {

std::string_view to_string(LogComponent c) {
    switch (c) {
        case LogComponent::BNL: return "BNL";
        case LogComponent::DHCP: return "DHCP";
        case LogComponent::TFTP: return "TFTP";
        case LogComponent::CAT: return "CAT";
        case LogComponent::SIM: return "SIM";
    }
    return "???";
}

std::string_view to_string(LogLevel l) {
    switch (l) {
        case LogLevel::Inf: return "Inf";
        case LogLevel::Wrn: return "Wrn";
        case LogLevel::Err: return "Err";
    }
    return "???";
}

std::string format_log_line(LogComponent comp, LogLevel level, std::string_view message) {
    using namespace std::chrono;
    auto now = system_clock::now();
    auto ms = duration_cast<milliseconds>(now.time_since_epoch()) % 1000;
    std::time_t t = system_clock::to_time_t(now);
    std::tm tm{};
    localtime_r(&t, &tm);

    char stamp[32];
    std::snprintf(stamp, sizeof(stamp), "[%02d/%02d %02d:%02d:%02d.%03d]", tm.tm_mon + 1,
                  tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms.count()));

    std::string line(stamp);
    line += ' ';
    line += to_string(comp);
    line += ' ';
    line += to_string(level);
    line += ": ";
    // One event per line; strip anything that would break the grammar.
    for (char c : message) line += (c == '\n' || c == '\r') ? ' ' : c;
    return line;
}

Logger::Logger() : out_(&std::cerr) {}

void Logger::open_file(const std::filesystem::path& path) {
    std::lock_guard lock(mu_);
    file_.open(path, std::ios::app);
    if (!file_) throw std::runtime_error("cannot open log file: " + path.string());
    out_ = &file_;
}

void Logger::set_stream(std::ostream& out) {
    std::lock_guard lock(mu_);
    out_ = &out;
}

void Logger::set_tap(std::function<void(const std::string&)> tap) {
    std::lock_guard lock(mu_);
    tap_ = std::move(tap);
}

void Logger::log(LogComponent comp, LogLevel level, std::string_view message) {
    std::string line = format_log_line(comp, level, message);
    std::lock_guard lock(mu_);
    (*out_) << line << '\n';
    out_->flush();
    if (tap_) tap_(line);
}

}  // namespace netforge
