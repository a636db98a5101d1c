#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netforge/catalog/catalog.hpp"
#include "netforge/log.hpp"
#include "netforge/net/fault.hpp"
#include "netforge/net/udp.hpp"
#include "netforge/sha256.hpp"

namespace netforge::sim {

/// The client's position in the boot sequence. Transitions only ever move
/// forward; Failed is terminal.
enum class ClientPhase {
    init,
    discovering,
    awaiting_offers,
    requesting,
    bound,
    boot_info_acquired,
    downloading_nbp,
    menu_loaded,
    downloading_image,
    verified,
    failed,
};

std::string_view to_string(ClientPhase p);

struct PhaseEvent {
    ClientPhase phase;
    std::chrono::milliseconds at{0};  // since run start
    std::string note;
};

struct OfferRecord {
    net::Endpoint from;
    Ipv4 yiaddr{};
    Ipv4 siaddr{};
    Ipv4 server_id{};
    bool has_boot = false;  // siaddr set and boot file named
    std::string bootfile;
};

// Spec-named failure reasons.
inline constexpr std::string_view kNoOffer = "NoOffer";
inline constexpr std::string_view kNoBootInfo = "NoBootInfo";
inline constexpr std::string_view kMenuMissing = "MenuMissing";
inline constexpr std::string_view kUnknownSelection = "UnknownSelection";
inline constexpr std::string_view kDigestMismatch = "DigestMismatch";
inline constexpr std::string_view kTransferTimeout = "TransferTimeout";
inline constexpr std::string_view kInvalidPlan = "InvalidPlan";

struct ClientReport {
    MacAddr mac;
    std::vector<PhaseEvent> phases;
    std::vector<OfferRecord> offers;
    Ipv4 lease{};
    std::string selected_id;
    std::uint64_t bytes_downloaded = 0;
    Digest nbp_digest{};
    Digest final_digest{};
    std::uint64_t menu_version = 0;
    bool success = false;
    std::string failure;  // one of the reasons above, empty on success
    std::uint32_t duplicate_blocks = 0;  // server retransmissions observed
    std::vector<std::string> fault_log;
};

struct ClientConfig {
    /// The loopback stand-in for a broadcast domain: DISCOVER/REQUEST go to
    /// every endpoint here (the server, and a primary-DHCP stub in proxy
    /// deployments).
    std::vector<net::Endpoint> dhcp_targets;
    net::Endpoint boot_service;   // the PXE boot-service port
    std::uint16_t tftp_port = 69; // host taken from the boot offer's siaddr
    Ipv4 bind_address{0x7F000001};
    std::string selection = "first";  // image id or "first"
    net::FaultPlan faults;
    std::chrono::milliseconds offer_window{2000};
    std::chrono::milliseconds deadline{30000};
    std::chrono::milliseconds retry_timeout{1000};
    int retries = 5;
    std::size_t block_size = 1428;  // requested via RFC 2348 blksize
    catalog::ImageArch arch = catalog::ImageArch::bios64;
};

/// Runs the full boot sequence against a live server over loopback UDP:
/// DISCOVER -> collected OFFERs -> REQUEST/ACK -> boot-service query -> NBP
/// download -> menu download -> image selection -> payload download ->
/// digest verification.
ClientReport run_client(const MacAddr& mac, const ClientConfig& config, Logger* logger = nullptr);

}  // namespace netforge::sim
