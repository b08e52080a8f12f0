#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "femtosim/protocol.hpp"
#include "femtosim/radio.hpp"
#include "femtosim/topology.hpp"

namespace femtosim {

// Which FAP power policy a run exercises: on-demand activation or the
// always-on baseline it is compared against.
enum class BaselineMode { Proposed, Existing };

std::string to_string(BaselineMode m);

struct ScheduledEvent {
    std::int64_t tick = 0;
    std::int32_t ue_id = 0;
    UeEventKind kind = UeEventKind::PowerOn;

    bool operator==(const ScheduledEvent&) const = default;
};

struct UeSpec {
    std::int32_t id = 0;
    double x = 0.0;
    double y = 0.0;
    double vx = 0.0;
    double vy = 0.0;

    bool operator==(const UeSpec&) const = default;
};

// Layout description as scenarios give it: either the parametric default
// grid or an explicit site list with exactly one tier-0 reference.
struct ScenarioLayout {
    bool custom = false;
    LayoutConfig cfg;
    std::vector<FapSite> sites;
    Position macro{300.0, 0.0, 100.0};

    bool operator==(const ScenarioLayout&) const = default;
};

Layout build_layout(const ScenarioLayout& sl);

struct Scenario {
    RadioConfig radio;
    ScenarioLayout layout;
    BaselineMode mode = BaselineMode::Proposed;
    std::int64_t ticks = 600;
    double tick_seconds = 0.1;
    std::uint64_t seed = 1;
    double wake_radius = 12.0;
    std::vector<UeSpec> ues;
    std::vector<ScheduledEvent> schedule;
    std::vector<std::int32_t> link_faults;
    std::int32_t trials = 200;
    double ue_distance = 5.0;

    void validate() const;

    bool operator==(const Scenario&) const = default;
};

struct World {
    RadioConfig cfg;
    Layout layout;
    BaselineMode mode = BaselineMode::Proposed;
    double tick_seconds = 0.1;
    double wake_radius = 12.0;
    std::int64_t tick = 0;
    std::vector<FapNode> faps;
    std::vector<UeNode> ues;
    FgwRegistry registry;
    std::vector<ScheduledEvent> schedule;
    std::size_t next_event = 0;
    EventLog log;
    std::int64_t handovers = 0;
    std::int64_t aborts = 0;
    std::int64_t wakes = 0;
    std::int64_t fam_ticks = 0;

    FapNode* find_fap(std::int32_t id);
    const FapNode* find_fap(std::int32_t id) const;
    UeNode* find_ue(std::int32_t id);
    RadioEnvironment env() const;
};

World make_world(const Scenario& sc);

// Advances one tick: scheduled events, motion, idle reselection, registry
// refresh, handover evaluation for every active UE, then mode settling.
void step(World& w);

// Throws protocol_error if the world violates a mode or attachment
// invariant. step() runs this after every tick.
void check_invariants(const World& w);

struct RunSummary {
    std::int64_t ticks = 0;
    std::int64_t handovers = 0;
    std::int64_t aborts = 0;
    std::int64_t wakes = 0;
    double energy_duty = 0.0;
};

std::string to_text(const RunSummary& s);

struct RunResult {
    RunSummary summary;
    EventLog log;
};

RunResult run_scenario(const Scenario& sc);

// Snapshot sweeps: a reference UE at a fixed distance from its serving FAP
// while the neighbor tier toggles between modes, sampled over many trials.
struct SweepSpec {
    RadioConfig radio;
    LayoutConfig layout;
    double ue_distance = 5.0;
    std::int32_t trials = 200;
    std::uint64_t seed = 1;
    bool common_random_numbers = true;
    bool keep_samples = false;
};

struct SeriesAggregate {
    double snir_db_mean = 0.0;
    double snir_db_std = 0.0;
    double snir_linear_mean = 0.0;
    double throughput_bps = 0.0;
    std::vector<double> snir_linear_samples;
};

struct SweepPoint {
    double sweep_value = 0.0;
    SeriesAggregate proposed;
    SeriesAggregate existing;
    double proposed_active_fraction = 0.0;
    double energy_duty = 0.0;
    std::int32_t trials = 0;
};

struct SweepResult {
    std::string sweep_kind;
    std::vector<SweepPoint> points;
};

// Each neighbor is active with probability p, independently per trial.
SweepResult run_probability_sweep(const SweepSpec& spec,
                                  const std::vector<double>& probabilities);

// Exactly k neighbors are active, chosen uniformly per trial. With common
// random numbers the chosen sets are nested across k within a trial.
SweepResult run_count_sweep(const SweepSpec& spec,
                            const std::vector<int>& counts);

std::vector<double> probability_sweep_points();
std::vector<int> count_sweep_points();

}  // namespace femtosim
