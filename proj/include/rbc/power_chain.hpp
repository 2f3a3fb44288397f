#pragma once

#include <string>

namespace rbc {

/// Conversion/transmission efficiencies along the beam power path, each in (0, 1].
/// Field names follow the config-file keys: source driver (eta_s), path
/// controller (eta_pc), over-the-air transmission (eta_t), receiver PV cell
/// (eta_r), power buffer (eta_pb), DC-DC converter (eta_dc).
struct EfficiencyChain {
    double eta_s = 1.0;
    double eta_pc = 1.0;
    double eta_t = 1.0;
    double eta_r = 1.0;
    double eta_pb = 1.0;
    double eta_dc = 1.0;

    bool operator==(const EfficiencyChain&) const = default;
};

/// Throws std::invalid_argument naming the offending field if any efficiency
/// is outside (0, 1].
void validate(const EfficiencyChain& chain);

/// Product of the six stage efficiencies. Validates the chain first.
double overall_efficiency(const EfficiencyChain& chain);

/// One receiver's PWM wave as seen at the power buffer input.
struct PwmWave {
    double peak_power_w = 0.0;   // level during the ON stage
    double pulse_width_s = 0.0;  // ON-stage duration
    double period_s = 1.0;       // equals the frame width in TDMA operation

    double duty() const { return pulse_width_s / period_s; }
};

void validate(const PwmWave& wave);

/// Constant output power of the ideal lossless buffer: duty * peak.
/// Equivalent to balancing input and output energy over one period.
double buffer_output(const PwmWave& wave);

/// End-to-end charging power for a given duty cycle: efficiency * duty * drive.
double charging_power(double drive_power_w, double duty, double efficiency);

/// Duty cycle needed to deliver `desired_power_w` at the given drive power and
/// chain efficiency. May exceed 1; callers decide how to clamp.
/// Throws std::domain_error when drive power or efficiency is zero.
double duty_for_power(double desired_power_w, double drive_power_w, double efficiency);

struct SlotDemand {
    int slots = 0;              // desired slot count within one frame
    bool power_limited = false; // demand exceeded what a full frame can deliver

    bool operator==(const SlotDemand&) const = default;
};

/// Slots needed in a frame of `slots_per_frame` to deliver `desired_power_w`:
/// the duty cycle quantized upward so the allocation never undershoots.
/// A demand that cannot fit a whole frame is clamped to the full frame and
/// flagged power_limited; the receiver then charges at the deliverable power.
SlotDemand slots_for_power(double desired_power_w, double drive_power_w,
                           double efficiency, int slots_per_frame);

/// Transmitter-side timing constants for TDMA operation.
struct DriveSettings {
    double drive_power_w = 21.0;
    int slots_per_frame = 200;
    double slot_width_s = 1e-6;
    double segment_width_s = 1.0;

    double frame_width_s() const { return slots_per_frame * slot_width_s; }
    /// Identical frames repeated within one segment.
    long frames_per_segment() const;

    bool operator==(const DriveSettings&) const = default;
};

/// Checks positivity and that the segment width is an integer number of frames.
void validate(const DriveSettings& drive);

}  // namespace rbc
