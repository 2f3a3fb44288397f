#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rbc/battery.hpp"
#include "rbc/power_chain.hpp"

namespace rbc {

/// Per-receiver record kept by the transmitter: battery state plus the slot
/// demand computed at the most recent refresh.
struct DeviceProfile {
    int id = 0;
    double residual_mah = 0.0;
    double desired_power_w = 0.0;
    int desired_slots = 0;
    bool power_limited = false;

    bool operator==(const DeviceProfile&) const = default;
};

struct AccessRequest {
    int id = 0;
    double initial_mah = 0.0;
};

using AuthPredicate = std::function<bool(const AccessRequest&)>;

/// Accepts every request.
AuthPredicate accept_all();

/// The transmitter's registry of accessed receivers, kept in admission order.
struct Registry {
    std::vector<DeviceProfile> devices;

    bool contains(int id) const;
    const DeviceProfile* find(int id) const;
    bool empty() const { return devices.empty(); }
    int size() const { return static_cast<int>(devices.size()); }
};

/// Admits every pending request that passes authentication, appending a fresh
/// profile per request; rejected requests are dropped with a logged reason.
/// A duplicate id (among the requests or against the registry) throws
/// std::invalid_argument and leaves the registry unchanged.
void access(const std::vector<AccessRequest>& pending, Registry& registry,
            const AuthPredicate& authenticate = accept_all());

/// Re-reads every device's battery state: desired power from the charging
/// profile, slot demand from the power chain. Fully charged devices are
/// removed; an empty registry afterwards means scheduling is finished.
void refresh(Registry& registry, const DriveSettings& drive, double efficiency,
             const BatterySpec& battery);

/// One frame's slot assignment: device ids, one per slot, contiguous per
/// device in allocation order.
struct Frame {
    std::vector<int> slot_ids;

    /// Multiplexing number: distinct devices sharing the frame.
    int multiplexing() const;
    int used_slots() const { return static_cast<int>(slot_ids.size()); }
    int idle_slots(int slots_per_frame) const { return slots_per_frame - used_slots(); }
    /// (device id, slot count) runs in allocation order.
    std::vector<std::pair<int, int>> runs() const;

    bool operator==(const Frame&) const = default;
};

/// Forms one frame: devices scanned by ascending residual capacity (ties by
/// ascending id), each taking its desired slots when they still fit; scanning
/// continues past devices that do not fit. Zero-slot devices are skipped.
Frame allocate_frame(const Registry& registry, int slots_per_frame);

/// Baseline rotation: id of the next not-yet-full device in cyclic id order
/// strictly after `after_id`. Returns nullopt when every device is full.
std::optional<int> alternative_next(const Registry& registry,
                                    double full_capacity_mah, int after_id);

}  // namespace rbc
