#include "rbc/scheduler.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "rbc/log.hpp"

namespace rbc {

AuthPredicate accept_all() {
    return [](const AccessRequest&) { return true; };
}

bool Registry::contains(int id) const {
    return find(id) != nullptr;
}

const DeviceProfile* Registry::find(int id) const {
    for (const auto& dev : devices) {
        if (dev.id == id) return &dev;
    }
    return nullptr;
}

void access(const std::vector<AccessRequest>& pending, Registry& registry,
            const AuthPredicate& authenticate) {
    std::unordered_set<int> seen;
    seen.reserve(registry.devices.size() + pending.size());
    for (const auto& dev : registry.devices) seen.insert(dev.id);
    for (const auto& req : pending) {
        if (!seen.insert(req.id).second) {
            throw std::invalid_argument("duplicate device id " + std::to_string(req.id));
        }
    }

    for (const auto& req : pending) {
        if (!authenticate(req)) {
            log(LogLevel::Info,
                "access rejected for device " + std::to_string(req.id) +
                    ": authentication failed");
            continue;
        }
        registry.devices.push_back(DeviceProfile{.id = req.id,
                                                 .residual_mah = req.initial_mah});
    }
}

void refresh(Registry& registry, const DriveSettings& drive, double efficiency,
             const BatterySpec& battery) {
    auto& devices = registry.devices;
    for (auto it = devices.begin(); it != devices.end();) {
        const double soc = it->residual_mah / battery.full_capacity_mah;
        it->desired_power_w = desired_power(soc, battery);
        const SlotDemand demand = slots_for_power(
            it->desired_power_w, drive.drive_power_w, efficiency, drive.slots_per_frame);
        it->desired_slots = demand.slots;
        it->power_limited = demand.power_limited;

        if (it->residual_mah >= battery.full_capacity_mah) {
            it = devices.erase(it);
        } else {
            ++it;
        }
    }
}

int Frame::multiplexing() const {
    int distinct = 0;
    int previous = std::numeric_limits<int>::min();
    for (int id : slot_ids) {
        if (distinct == 0 || id != previous) {
            ++distinct;
            previous = id;
        }
    }
    return distinct;
}

std::vector<std::pair<int, int>> Frame::runs() const {
    std::vector<std::pair<int, int>> out;
    for (int id : slot_ids) {
        if (out.empty() || out.back().first != id) {
            out.emplace_back(id, 1);
        } else {
            ++out.back().second;
        }
    }
    return out;
}

Frame allocate_frame(const Registry& registry, int slots_per_frame) {
    if (slots_per_frame < 1) {
        throw std::invalid_argument("slots_per_frame must be at least 1");
    }
    std::vector<const DeviceProfile*> order;
    order.reserve(registry.devices.size());
    for (const auto& dev : registry.devices) order.push_back(&dev);
    std::sort(order.begin(), order.end(), [](const DeviceProfile* a, const DeviceProfile* b) {
        if (a->residual_mah != b->residual_mah) return a->residual_mah < b->residual_mah;
        return a->id < b->id;  // deterministic tie-break
    });

    Frame frame;
    frame.slot_ids.reserve(slots_per_frame);
    for (const DeviceProfile* dev : order) {
        if (dev->desired_slots == 0) continue;
        if (dev->desired_slots <= slots_per_frame - frame.used_slots()) {
            frame.slot_ids.insert(frame.slot_ids.end(), dev->desired_slots, dev->id);
        }
        // a device that does not fit is passed over; later smaller demands may still fit
    }
    return frame;
}

std::optional<int> alternative_next(const Registry& registry,
                                    double full_capacity_mah, int after_id) {
    const DeviceProfile* best_after = nullptr;   // smallest id > after_id
    const DeviceProfile* best_wrap = nullptr;    // smallest id overall
    for (const auto& dev : registry.devices) {
        if (dev.residual_mah >= full_capacity_mah) continue;
        if (dev.id > after_id && (best_after == nullptr || dev.id < best_after->id)) {
            best_after = &dev;
        }
        if (best_wrap == nullptr || dev.id < best_wrap->id) {
            best_wrap = &dev;
        }
    }
    if (best_after != nullptr) return best_after->id;
    if (best_wrap != nullptr) return best_wrap->id;
    return std::nullopt;
}

}  // namespace rbc
