#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbc/battery.hpp"
#include "rbc/power_chain.hpp"
#include "rbc/scheduler.hpp"

namespace rbc {

enum class SchedulerKind { Tdma, Alternative };
enum class InitMode { Zero, UniformRandom };

std::string_view scheduler_name(SchedulerKind kind);
std::string_view init_mode_name(InitMode mode);

struct SimConfig {
    SchedulerKind scheduler = SchedulerKind::Tdma;
    int receivers = 1;
    InitMode init_mode = InitMode::Zero;
    std::optional<std::uint64_t> seed;
    EfficiencyChain chain{.eta_s = 0.4, .eta_r = 0.5};
    DriveSettings drive;
    BatterySpec battery;
    /// Scheduling cadence. The TDMA loop refreshes once per segment, so this
    /// must equal the segment width there; for the alternative scheduler it is
    /// the macro time-sharing step.
    double refresh_period_s = 1.0;
    double max_time_s = 2e7;  // safety cap against non-terminating setups
    /// Record per-device traces every N refreshes; 0 disables recording.
    int device_trace_stride = 0;

    bool operator==(const SimConfig&) const = default;
};

void validate(const SimConfig& config);

/// One scheduling period's multiplexing record.
struct PsiSample {
    double t_s = 0.0;             // period start
    int psi = 0;                  // receivers sharing the frame
    double duration_s = 0.0;
    int active_receivers = 0;     // not-yet-full receivers at period start
    double delivered_power_w = 0.0;  // battery-side power summed over receivers

    bool operator==(const PsiSample&) const = default;
};

struct DeviceTracePoint {
    double t_s = 0.0;
    double residual_mah = 0.0;
    double desired_power_w = 0.0;
    int desired_slots = 0;

    bool operator==(const DeviceTracePoint&) const = default;
};

struct DeviceSummary {
    int id = 0;
    double initial_mah = 0.0;
    double final_mah = 0.0;
    double delivered_energy_j = 0.0;
    double full_at_s = -1.0;  // first refresh that saw the device full; -1 if never
    std::vector<DeviceTracePoint> trace;

    bool operator==(const DeviceSummary&) const = default;
};

struct SimResult {
    double charge_time_s = 0.0;
    std::vector<PsiSample> psi_series;
    double avg_multiplexing = 0.0;
    std::vector<DeviceSummary> devices;
    double delivered_energy_j = 0.0;
    double transmitter_energy_j = 0.0;
    bool power_limited_any = false;
    bool incomplete = false;  // safety cap fired

    bool operator==(const SimResult&) const = default;
};

/// Raised when the safety cap fires; carries everything simulated so far.
class SimTimeLimitError : public std::runtime_error {
public:
    SimTimeLimitError(const std::string& message, SimResult partial)
        : std::runtime_error(message), partial_(std::move(partial)) {}
    const SimResult& partial() const { return partial_; }

private:
    SimResult partial_;
};

/// Time-weighted average multiplexing number over a charging run.
/// Throws std::domain_error when the total time is not positive.
double average_multiplexing(std::span<const PsiSample> series, double total_time_s);

/// Initial residual capacities: all zero, or seeded uniform draws on
/// [0, full_capacity). Uniform mode requires a seed.
std::vector<double> init_capacities(int receivers, InitMode mode,
                                    std::optional<std::uint64_t> seed,
                                    double full_capacity_mah);

SimResult run_tdma(const SimConfig& config);
SimResult run_alternative(const SimConfig& config);
/// Dispatches on config.scheduler.
SimResult run_simulation(const SimConfig& config);

struct SweepCell {
    SchedulerKind scheduler = SchedulerKind::Tdma;
    int receivers = 0;
    double drive_power_w = 0.0;
    InitMode init_mode = InitMode::Zero;
    std::optional<std::uint64_t> seed;

    bool operator==(const SweepCell&) const = default;
};

struct SweepRow {
    SweepCell cell;
    SimResult result;
    bool failed = false;
    std::string error;
};

/// Runs every grid cell independently; rows come back ordered by
/// (scheduler, receivers, drive power, seed). A failing cell is marked and
/// the sweep continues. `threads` > 1 runs cells concurrently; output is
/// identical to a serial sweep.
std::vector<SweepRow> sweep(const SimConfig& base,
                            std::span<const SchedulerKind> schedulers,
                            std::span<const int> receiver_counts,
                            std::span<const double> drive_powers,
                            std::span<const std::optional<std::uint64_t>> seeds,
                            unsigned threads = 1);

}  // namespace rbc
