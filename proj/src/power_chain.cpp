#include "rbc/power_chain.hpp"

#include <cmath>
#include <stdexcept>

namespace rbc {

namespace {

// Relative slack when snapping a nearly-integral slot count. Keeps the
// upward quantization immune to rounding noise from the duty arithmetic
// while staying inside the 1e-12 exactness budget of the power-chain math.
constexpr double kSlotSnapTolerance = 1e-12;

void check_fraction(double value, const char* name) {
    if (!(value > 0.0) || value > 1.0) {
        throw std::invalid_argument(std::string(name) + " out of range (0,1]");
    }
}

}  // namespace

void validate(const EfficiencyChain& chain) {
    check_fraction(chain.eta_s, "eta_s");
    check_fraction(chain.eta_pc, "eta_pc");
    check_fraction(chain.eta_t, "eta_t");
    check_fraction(chain.eta_r, "eta_r");
    check_fraction(chain.eta_pb, "eta_pb");
    check_fraction(chain.eta_dc, "eta_dc");
}

double overall_efficiency(const EfficiencyChain& chain) {
    validate(chain);
    return chain.eta_s * chain.eta_pc * chain.eta_t * chain.eta_r * chain.eta_pb *
           chain.eta_dc;
}

void validate(const PwmWave& wave) {
    if (!(wave.period_s > 0.0)) {
        throw std::invalid_argument("PWM period must be positive");
    }
    if (wave.pulse_width_s < 0.0 || wave.pulse_width_s > wave.period_s) {
        throw std::invalid_argument("PWM pulse width must lie in [0, period]");
    }
    if (wave.peak_power_w < 0.0) {
        throw std::invalid_argument("PWM peak power must be non-negative");
    }
}

double buffer_output(const PwmWave& wave) {
    validate(wave);
    return wave.duty() * wave.peak_power_w;
}

double charging_power(double drive_power_w, double duty, double efficiency) {
    if (drive_power_w < 0.0) {
        throw std::invalid_argument("drive power must be non-negative");
    }
    if (duty < 0.0 || duty > 1.0) {
        throw std::invalid_argument("duty cycle must lie in [0, 1]");
    }
    check_fraction(efficiency, "efficiency");
    return efficiency * duty * drive_power_w;
}

double duty_for_power(double desired_power_w, double drive_power_w, double efficiency) {
    if (desired_power_w < 0.0) {
        throw std::invalid_argument("desired power must be non-negative");
    }
    if (drive_power_w == 0.0 || efficiency == 0.0) {
        throw std::domain_error("duty undefined for zero drive power or efficiency");
    }
    if (drive_power_w < 0.0) {
        throw std::invalid_argument("drive power must be non-negative");
    }
    if (efficiency < 0.0 || efficiency > 1.0) {
        throw std::invalid_argument("efficiency out of range (0,1]");
    }
    return desired_power_w / (efficiency * drive_power_w);
}

SlotDemand slots_for_power(double desired_power_w, double drive_power_w,
                           double efficiency, int slots_per_frame) {
    if (slots_per_frame < 1) {
        throw std::invalid_argument("slots_per_frame must be at least 1");
    }
    const double duty = duty_for_power(desired_power_w, drive_power_w, efficiency);
    const double exact = duty * static_cast<double>(slots_per_frame);

    const double nearest = std::round(exact);
    double quantized;
    if (std::abs(exact - nearest) <= kSlotSnapTolerance * std::max(1.0, std::abs(exact))) {
        quantized = nearest;
    } else {
        quantized = std::ceil(exact);
    }

    if (quantized > static_cast<double>(slots_per_frame)) {
        return {slots_per_frame, true};
    }
    return {static_cast<int>(quantized), false};
}

long DriveSettings::frames_per_segment() const {
    return std::lround(segment_width_s / frame_width_s());
}

void validate(const DriveSettings& drive) {
    if (!(drive.drive_power_w > 0.0)) {
        throw std::invalid_argument("drive_power_w must be positive");
    }
    if (drive.slots_per_frame < 1) {
        throw std::invalid_argument("slots_per_frame must be at least 1");
    }
    if (!(drive.slot_width_s > 0.0)) {
        throw std::invalid_argument("slot_width_s must be positive");
    }
    if (!(drive.segment_width_s > 0.0)) {
        throw std::invalid_argument("segment_width_s must be positive");
    }
    const double frames = drive.segment_width_s / drive.frame_width_s();
    const double nearest = std::round(frames);
    if (nearest < 1.0 || std::abs(frames - nearest) > 1e-9 * frames) {
        throw std::invalid_argument(
            "segment_width_s must be an integer multiple of the frame width");
    }
}

}  // namespace rbc
