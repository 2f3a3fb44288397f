#include "rbc/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "rbc/log.hpp"
#include "rbc/rng.hpp"

namespace rbc {

std::string_view scheduler_name(SchedulerKind kind) {
    return kind == SchedulerKind::Tdma ? "tdma" : "alternative";
}

std::string_view init_mode_name(InitMode mode) {
    return mode == InitMode::Zero ? "zero" : "uniform";
}

void validate(const SimConfig& config) {
    if (config.receivers < 0) {
        throw std::invalid_argument("receivers must be non-negative");
    }
    if (config.init_mode == InitMode::UniformRandom && !config.seed.has_value()) {
        throw std::invalid_argument("seed required when init_mode = uniform");
    }
    validate(config.chain);
    validate(config.drive);
    validate(config.battery);
    if (!(config.refresh_period_s > 0.0)) {
        throw std::invalid_argument("refresh_period_s must be positive");
    }
    if (!(config.max_time_s > 0.0)) {
        throw std::invalid_argument("max_time_s must be positive");
    }
    if (config.device_trace_stride < 0) {
        throw std::invalid_argument("device_trace_stride must be non-negative");
    }
}

double average_multiplexing(std::span<const PsiSample> series, double total_time_s) {
    if (!(total_time_s > 0.0)) {
        throw std::domain_error("total time must be positive");
    }
    double weighted = 0.0;
    for (const auto& sample : series) {
        weighted += static_cast<double>(sample.psi) * sample.duration_s;
    }
    return weighted / total_time_s;
}

std::vector<double> init_capacities(int receivers, InitMode mode,
                                    std::optional<std::uint64_t> seed,
                                    double full_capacity_mah) {
    if (receivers < 0) {
        throw std::invalid_argument("receivers must be non-negative");
    }
    std::vector<double> capacities(static_cast<std::size_t>(receivers), 0.0);
    if (mode == InitMode::UniformRandom) {
        if (!seed.has_value()) {
            throw std::invalid_argument("seed required when init_mode = uniform");
        }
        for (int i = 0; i < receivers; ++i) {
            capacities[static_cast<std::size_t>(i)] =
                uniform_unit(splitmix64_at(*seed, static_cast<std::uint64_t>(i))) *
                full_capacity_mah;
        }
    }
    return capacities;
}

namespace {

struct RunState {
    Registry registry;
    SimResult result;
    std::vector<std::size_t> device_index;  // id -> slot in result.devices
};

RunState make_run_state(const SimConfig& config) {
    RunState state;
    const std::vector<double> initial = init_capacities(
        config.receivers, config.init_mode, config.seed, config.battery.full_capacity_mah);

    std::vector<AccessRequest> requests;
    requests.reserve(initial.size());
    for (int i = 0; i < config.receivers; ++i) {
        requests.push_back({i, initial[static_cast<std::size_t>(i)]});
    }
    access(requests, state.registry);

    state.result.devices.reserve(initial.size());
    state.device_index.resize(initial.size());
    for (int i = 0; i < config.receivers; ++i) {
        DeviceSummary summary;
        summary.id = i;
        summary.initial_mah = initial[static_cast<std::size_t>(i)];
        summary.final_mah = summary.initial_mah;
        state.device_index[static_cast<std::size_t>(i)] = state.result.devices.size();
        state.result.devices.push_back(std::move(summary));
    }
    return state;
}

void finish(RunState& state, double elapsed_s) {
    state.result.charge_time_s = elapsed_s;
    state.result.avg_multiplexing =
        state.result.psi_series.empty()
            ? 0.0
            : average_multiplexing(state.result.psi_series, elapsed_s);
}

[[noreturn]] void throw_time_limit(RunState& state, double elapsed_s, double cap_s) {
    state.result.incomplete = true;
    finish(state, elapsed_s);
    throw SimTimeLimitError(
        "simulation exceeded max_time_s = " + std::to_string(cap_s) +
            " before all receivers were full",
        std::move(state.result));
}

void record_traces(RunState& state, double t_s) {
    for (const auto& dev : state.registry.devices) {
        auto& summary = state.result.devices[state.device_index[static_cast<std::size_t>(dev.id)]];
        summary.trace.push_back(
            {t_s, dev.residual_mah, dev.desired_power_w, dev.desired_slots});
    }
}

void note_full_devices(RunState& state, const Registry& before_filter, double t_s,
                       double full_capacity_mah) {
    for (const auto& dev : before_filter.devices) {
        if (dev.residual_mah >= full_capacity_mah) {
            auto& summary =
                state.result.devices[state.device_index[static_cast<std::size_t>(dev.id)]];
            if (summary.full_at_s < 0.0) summary.full_at_s = t_s;
        }
    }
}

}  // namespace

SimResult run_tdma(const SimConfig& config) {
    validate(config);
    const double efficiency = overall_efficiency(config.chain);
    const double segment_s = config.drive.segment_width_s;
    const int slots = config.drive.slots_per_frame;
    const double frame_capacity_w = efficiency * config.drive.drive_power_w;

    RunState state = make_run_state(config);
    std::vector<char> selected(static_cast<std::size_t>(config.receivers), 0);

    long segment = 0;
    while (true) {
        const double t = static_cast<double>(segment) * segment_s;

        Registry snapshot;
        if (!state.registry.empty()) snapshot = state.registry;
        refresh(state.registry, config.drive, efficiency, config.battery);
        note_full_devices(state, snapshot, t, config.battery.full_capacity_mah);
        for (const auto& dev : state.registry.devices) {
            if (dev.power_limited) state.result.power_limited_any = true;
        }
        if (config.device_trace_stride > 0 && segment % config.device_trace_stride == 0) {
            record_traces(state, t);
        }

        if (state.registry.empty()) {
            finish(state, t);
            return state.result;
        }

        const Frame frame = allocate_frame(state.registry, slots);

        std::fill(selected.begin(), selected.end(), 0);
        for (const auto& [id, slot_count] : frame.runs()) {
            selected[static_cast<std::size_t>(id)] = 1;
        }

        double delivered_w = 0.0;
        for (auto& dev : state.registry.devices) {
            if (!selected[static_cast<std::size_t>(dev.id)]) continue;
            // The ceiling in the slot demand can over-provision; the receiver's
            // DC-DC stage regulates the battery input back to the desired power.
            // A power-limited receiver gets the whole frame's deliverable power.
            const double slot_share =
                static_cast<double>(dev.desired_slots) / static_cast<double>(slots);
            const double battery_w =
                std::min(dev.desired_power_w, frame_capacity_w * slot_share);
            const BatteryState next = integrate(
                {dev.residual_mah}, battery_w, segment_s, config.battery);
            auto& summary =
                state.result.devices[state.device_index[static_cast<std::size_t>(dev.id)]];
            summary.delivered_energy_j += battery_w * segment_s;
            summary.final_mah = next.residual_mah;
            dev.residual_mah = next.residual_mah;
            delivered_w += battery_w;
        }

        state.result.delivered_energy_j += delivered_w * segment_s;
        state.result.transmitter_energy_j +=
            config.drive.drive_power_w * segment_s *
            (static_cast<double>(frame.used_slots()) / static_cast<double>(slots));
        state.result.psi_series.push_back(
            {t, frame.multiplexing(), segment_s, state.registry.size(), delivered_w});

        ++segment;
        const double elapsed = static_cast<double>(segment) * segment_s;
        if (elapsed > config.max_time_s) {
            throw_time_limit(state, elapsed, config.max_time_s);
        }
    }
}

SimResult run_alternative(const SimConfig& config) {
    validate(config);
    const double efficiency = overall_efficiency(config.chain);
    const double step_s = config.refresh_period_s;

    RunState state = make_run_state(config);

    long step = 0;
    while (true) {
        const double t = static_cast<double>(step) * step_s;

        // Same filtering rule as the TDMA loop: drop full receivers, then stop
        // once none remain.
        Registry snapshot;
        if (!state.registry.empty()) snapshot = state.registry;
        auto& devices = state.registry.devices;
        for (auto it = devices.begin(); it != devices.end();) {
            const double soc = it->residual_mah / config.battery.full_capacity_mah;
            it->desired_power_w = desired_power(soc, config.battery);
            it->desired_slots = 0;
            if (it->residual_mah >= config.battery.full_capacity_mah) {
                it = devices.erase(it);
            } else {
                ++it;
            }
        }
        note_full_devices(state, snapshot, t, config.battery.full_capacity_mah);
        if (config.device_trace_stride > 0 && step % config.device_trace_stride == 0) {
            record_traces(state, t);
        }

        if (devices.empty()) {
            finish(state, t);
            return state.result;
        }

        // One receiver per frame: over a macro step each active receiver is
        // served for an equal share of the frames at its desired power.
        const int active = state.registry.size();
        const double share_s = step_s / static_cast<double>(active);
        double delivered_avg_w = 0.0;
        for (auto& dev : devices) {
            const BatteryState next = integrate(
                {dev.residual_mah}, dev.desired_power_w, share_s, config.battery);
            auto& summary =
                state.result.devices[state.device_index[static_cast<std::size_t>(dev.id)]];
            summary.delivered_energy_j += dev.desired_power_w * share_s;
            summary.final_mah = next.residual_mah;
            dev.residual_mah = next.residual_mah;
            delivered_avg_w += dev.desired_power_w / static_cast<double>(active);
            // the beam is driven at whatever power the served receiver asks for
            state.result.transmitter_energy_j += dev.desired_power_w / efficiency * share_s;
        }

        state.result.delivered_energy_j += delivered_avg_w * step_s;
        state.result.psi_series.push_back({t, 1, step_s, active, delivered_avg_w});

        ++step;
        const double elapsed = static_cast<double>(step) * step_s;
        if (elapsed > config.max_time_s) {
            throw_time_limit(state, elapsed, config.max_time_s);
        }
    }
}

SimResult run_simulation(const SimConfig& config) {
    return config.scheduler == SchedulerKind::Tdma ? run_tdma(config)
                                                   : run_alternative(config);
}

std::vector<SweepRow> sweep(const SimConfig& base,
                            std::span<const SchedulerKind> schedulers,
                            std::span<const int> receiver_counts,
                            std::span<const double> drive_powers,
                            std::span<const std::optional<std::uint64_t>> seeds,
                            unsigned threads) {
    std::vector<SweepCell> cells;
    for (SchedulerKind kind : schedulers) {
        for (int n : receiver_counts) {
            for (double power : drive_powers) {
                for (const auto& seed : seeds) {
                    cells.push_back({kind, n, power, base.init_mode, seed});
                }
            }
        }
    }

    std::vector<SweepRow> rows(cells.size());
    auto run_cell = [&](std::size_t index) {
        const SweepCell& cell = cells[index];
        SweepRow& row = rows[index];
        row.cell = cell;
        SimConfig config = base;
        config.scheduler = cell.scheduler;
        config.receivers = cell.receivers;
        config.drive.drive_power_w = cell.drive_power_w;
        config.seed = cell.seed;
        try {
            row.result = run_simulation(config);
        } catch (const std::exception& ex) {
            row.failed = true;
            row.error = ex.what();
            log(LogLevel::Warn, "sweep cell failed: " + row.error);
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, cells.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t index = next.fetch_add(1);
                    if (index >= cells.size()) break;
                    run_cell(index);
                }
            });
        }
        for (auto& worker : pool) worker.join();
    }
    return rows;
}

}  // namespace rbc
