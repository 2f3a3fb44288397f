#pragma once

#include <string_view>

namespace rbc {

/// Parametric CC-CV Li-ion charging profile. Defaults describe a single-cell
/// 1000 mAh pack with a 4.2 W peak charging power; every knob is configurable
/// so the curve can be refit to other published profiles.
struct BatterySpec {
    double full_capacity_mah = 1000.0;
    double c_rate_current_a = 1.0;    // charge current at 1C
    double tc_soc_end = 0.1;          // trickle charge ends here
    double cc_soc_end = 0.8;          // constant-current ends, constant-voltage begins
    double v_min = 3.0;               // cell voltage at the trickle/CC boundary
    double v_max = 4.2;               // CV hold voltage
    double tc_current_c = 0.1;        // trickle current as a fraction of 1C
    double cv_current_floor_c = 0.05; // CV taper floor, guarantees finite charge time

    double peak_power_w() const { return v_max * c_rate_current_a; }

    bool operator==(const BatterySpec&) const = default;
};

void validate(const BatterySpec& spec);

struct BatteryState {
    double residual_mah = 0.0;

    bool operator==(const BatteryState&) const = default;
};

inline double soc_of(const BatteryState& state, const BatterySpec& spec) {
    return state.residual_mah / spec.full_capacity_mah;
}

enum class ChargeStage { Trickle, ConstantCurrent, ConstantVoltage, Terminal };

/// Short label used in CSV output: TC, CC, CV, CT.
std::string_view stage_name(ChargeStage stage);

/// Stage for a state of charge in [0, 1]. Throws std::domain_error otherwise.
ChargeStage stage_of(double soc, const BatterySpec& spec);

/// Cell voltage used for power/current conversion at the given state of
/// charge: v_min through trickle, linear ramp across CC, v_max from CV on.
double charge_voltage(double soc, const BatterySpec& spec);

/// Desired charging power at the given state of charge. Rises from the
/// trickle level through the CC ramp to the peak at the CC/CV boundary, then
/// tapers with the CV current (floored so full charge is reached in finite
/// time) and drops to zero once full.
double desired_power(double soc, const BatterySpec& spec);

/// Zero-order-hold charge integration: converts `power_w` held for `dt_s`
/// into capacity gain using the stage voltage at the start of the step.
/// Clamps at full capacity; a full battery is left unchanged.
BatteryState integrate(const BatteryState& state, double power_w, double dt_s,
                       const BatterySpec& spec);

}  // namespace rbc
