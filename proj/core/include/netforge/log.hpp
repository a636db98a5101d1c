#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>

namespace netforge {

enum class LogComponent { BNL, DHCP, TFTP, CAT, SIM };
enum class LogLevel { Inf, Wrn, Err };

std::string_view to_string(LogComponent c);
std::string_view to_string(LogLevel l);

/// Serialized line sink. Lines look like
///   [07/21 14:54:38.717] BNL Inf: Preparation/Maintenance procedures "Start" ***
/// and never interleave mid-line.
class Logger {
public:
    Logger();  // stderr sink

    /// Switches the sink to a file (append). Throws on open failure.
    void open_file(const std::filesystem::path& path);
    /// Redirects lines to an arbitrary stream (tests).
    void set_stream(std::ostream& out);
    /// Extra tap invoked with each formatted line, after it is written.
    void set_tap(std::function<void(const std::string&)> tap);

    void log(LogComponent comp, LogLevel level, std::string_view message);

    void info(LogComponent c, std::string_view m) { log(c, LogLevel::Inf, m); }
    void warn(LogComponent c, std::string_view m) { log(c, LogLevel::Wrn, m); }
    void error(LogComponent c, std::string_view m) { log(c, LogLevel::Err, m); }

private:
    std::mutex mu_;
    std::ofstream file_;
    std::ostream* out_;
    std::function<void(const std::string&)> tap_;
};

/// Formats one log line without writing it anywhere.
std::string format_log_line(LogComponent comp, LogLevel level, std::string_view message);

}  // namespace netforge
