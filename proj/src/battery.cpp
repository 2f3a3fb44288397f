#include "rbc/battery.hpp"

#include <algorithm>
#include <stdexcept>

namespace rbc {

void validate(const BatterySpec& spec) {
    if (!(spec.full_capacity_mah > 0.0)) {
        throw std::invalid_argument("full_capacity_mah must be positive");
    }
    if (!(spec.c_rate_current_a > 0.0)) {
        throw std::invalid_argument("c_rate_current_a must be positive");
    }
    if (!(spec.tc_soc_end > 0.0) || !(spec.cc_soc_end > spec.tc_soc_end) ||
        !(spec.cc_soc_end < 1.0)) {
        throw std::invalid_argument("require 0 < tc_soc_end < cc_soc_end < 1");
    }
    if (!(spec.v_min > 0.0) || !(spec.v_max > spec.v_min)) {
        throw std::invalid_argument("require 0 < v_min < v_max");
    }
    if (!(spec.tc_current_c > 0.0)) {
        throw std::invalid_argument("tc_current_c must be positive");
    }
    if (!(spec.cv_current_floor_c > 0.0)) {
        throw std::invalid_argument("cv_current_floor_c must be positive");
    }
}

std::string_view stage_name(ChargeStage stage) {
    switch (stage) {
        case ChargeStage::Trickle: return "TC";
        case ChargeStage::ConstantCurrent: return "CC";
        case ChargeStage::ConstantVoltage: return "CV";
        case ChargeStage::Terminal: return "CT";
    }
    return "?";
}

ChargeStage stage_of(double soc, const BatterySpec& spec) {
    if (soc < 0.0 || soc > 1.0) {
        throw std::domain_error("state of charge must lie in [0, 1]");
    }
    if (soc >= 1.0) return ChargeStage::Terminal;
    if (soc >= spec.cc_soc_end) return ChargeStage::ConstantVoltage;
    if (soc >= spec.tc_soc_end) return ChargeStage::ConstantCurrent;
    return ChargeStage::Trickle;
}

double charge_voltage(double soc, const BatterySpec& spec) {
    switch (stage_of(soc, spec)) {
        case ChargeStage::Trickle:
            return spec.v_min;
        case ChargeStage::ConstantCurrent:
            return spec.v_min + (spec.v_max - spec.v_min) * (soc - spec.tc_soc_end) /
                                    (spec.cc_soc_end - spec.tc_soc_end);
        case ChargeStage::ConstantVoltage:
        case ChargeStage::Terminal:
            return spec.v_max;
    }
    return spec.v_max;
}

double desired_power(double soc, const BatterySpec& spec) {
    switch (stage_of(soc, spec)) {
        case ChargeStage::Trickle:
            return spec.tc_current_c * spec.c_rate_current_a * spec.v_min;
        case ChargeStage::ConstantCurrent:
            return spec.c_rate_current_a * charge_voltage(soc, spec);
        case ChargeStage::ConstantVoltage: {
            const double taper = (1.0 - soc) / (1.0 - spec.cc_soc_end);
            const double current =
                spec.c_rate_current_a * std::max(spec.cv_current_floor_c, taper);
            return spec.v_max * current;
        }
        case ChargeStage::Terminal:
            return 0.0;
    }
    return 0.0;
}

BatteryState integrate(const BatteryState& state, double power_w, double dt_s,
                       const BatterySpec& spec) {
    if (power_w < 0.0 || dt_s < 0.0) {
        throw std::domain_error("charging power and time step must be non-negative");
    }
    if (state.residual_mah >= spec.full_capacity_mah) {
        return state;
    }
    const double soc = soc_of(state, spec);
    const double current_a = power_w / charge_voltage(soc, spec);
    const double gained_mah = current_a * (dt_s / 3600.0) * 1000.0;
    return {std::min(spec.full_capacity_mah, state.residual_mah + gained_mah)};
}

}  // namespace rbc
