#include "femtosim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "femtosim/rng.hpp"

namespace femtosim {

namespace {

std::string fap_name(int32_t id) { return "fap:" + std::to_string(id); }
std::string ue_name(int32_t id) { return "ue:" + std::to_string(id); }

std::string cell_name(const std::optional<CellId>& cell) {
    return cell ? to_string(*cell) : "-";
}

// Idle reselection and initial camping: nearest femto whose coverage
// contains the UE, ties toward the lower id, macro otherwise.
CellId camp_cell(const Layout& layout, const Position& pos) {
    const FapSite* best = nullptr;
    double best_dist = 0.0;
    const auto consider = [&](const FapSite& site) {
        const double d = distance(site.pos, pos);
        if (d > site.radius_m) return;
        if (best == nullptr || d < best_dist) {
            best = &site;
            best_dist = d;
        }
    };
    consider(layout.reference);
    for (const FapSite& site : layout.neighbors) consider(site);
    return best ? CellId::fap(best->id) : CellId::macro();
}

void log_event(World& w, EventRecord::Kind kind, std::string entity,
               std::string from, std::string to, std::string cause) {
    w.log.push_back(EventRecord{w.tick, kind, std::move(entity),
                                std::move(from), std::move(to),
                                std::move(cause)});
}

// Mode settling with logging. The always-on baseline pins every FAP to
// FAM, so there demand is never consulted.
void settle_and_log(World& w, FapNode& fap, const char* cause) {
    if (w.mode == BaselineMode::Existing) return;
    const FapMode before = fap.mode;
    if (settle_fap_mode(fap, w.registry)) {
        log_event(w, EventRecord::Kind::FapModeChange, fap_name(fap.site.id),
                  to_string(before), to_string(fap.mode), cause);
    }
}

void recamp(World& w, UeNode& ue, const char* cause) {
    const CellId cell = camp_cell(w.layout, ue.pos);
    if (ue.serving && *ue.serving == cell) return;
    const std::string before = cell_name(ue.serving);
    ue.serving = cell;
    log_event(w, EventRecord::Kind::ServingChange, ue_name(ue.id), before,
              to_string(cell), cause);
}

void apply_scheduled_event(World& w, const ScheduledEvent& ev) {
    UeNode* ue = w.find_ue(ev.ue_id);
    if (ue == nullptr) {
        throw protocol_error("scheduled event for unknown ue " +
                             std::to_string(ev.ue_id));
    }
    const char* cause = to_string(ev.kind);
    switch (ev.kind) {
    case UeEventKind::PowerOn:
        *ue = ue_event(*ue, UeEvent{UeEventKind::PowerOn});
        log_event(w, EventRecord::Kind::UeStateChange, ue_name(ue->id),
                  "detached", "idle", cause);
        recamp(w, *ue, cause);
        break;
    case UeEventKind::PowerOff: {
        if (ue->state == UeState::Active && ue->serving &&
            !ue->serving->is_macro()) {
            FapNode* fap = w.find_fap(ue->serving->value);
            fap->attached_active.erase(ue->id);
            w.registry.ue_distance.erase(ue->id);
            settle_and_log(w, *fap, "no-demand");
        }
        const std::string before_state = to_string(ue->state);
        const std::string before_cell = cell_name(ue->serving);
        *ue = ue_event(*ue, UeEvent{UeEventKind::PowerOff});
        log_event(w, EventRecord::Kind::UeStateChange, ue_name(ue->id),
                  before_state, "detached", cause);
        log_event(w, EventRecord::Kind::ServingChange, ue_name(ue->id),
                  before_cell, "-", cause);
        break;
    }
    case UeEventKind::CallStart:
        recamp(w, *ue, cause);
        *ue = ue_event(*ue, UeEvent{UeEventKind::CallStart});
        log_event(w, EventRecord::Kind::UeStateChange, ue_name(ue->id),
                  "idle", "active", cause);
        if (!ue->serving->is_macro()) {
            FapNode* fap = w.find_fap(ue->serving->value);
            fap->attached_active.insert(ue->id);
            settle_and_log(w, *fap, "demand");
        }
        break;
    case UeEventKind::CallEnd:
        if (!ue->serving->is_macro()) {
            FapNode* fap = w.find_fap(ue->serving->value);
            fap->attached_active.erase(ue->id);
            w.registry.ue_distance.erase(ue->id);
            *ue = ue_event(*ue, UeEvent{UeEventKind::CallEnd});
            log_event(w, EventRecord::Kind::UeStateChange, ue_name(ue->id),
                      "active", "idle", cause);
            settle_and_log(w, *fap, "no-demand");
        } else {
            *ue = ue_event(*ue, UeEvent{UeEventKind::CallEnd});
            log_event(w, EventRecord::Kind::UeStateChange, ue_name(ue->id),
                      "active", "idle", cause);
        }
        break;
    case UeEventKind::Move:
        throw protocol_error("move is not a schedulable event");
    }
}

void evaluate_active_ue(World& w, UeNode& ue, const RadioEnvironment& env) {
    const HandoverDecision d =
        evaluate_handover(ue, env, w.registry, w.wake_radius);
    switch (d.kind) {
    case HandoverDecision::Kind::NoAction:
        break;
    case HandoverDecision::Kind::WakeTarget: {
        FapNode* target = w.find_fap(d.target.value);
        target->pending_wake = true;
        ++w.wakes;
        log_event(w, EventRecord::Kind::Wake, fap_name(target->site.id), "-",
                  "-", ue_name(ue.id));
        break;
    }
    case HandoverDecision::Kind::Execute: {
        FapNode* source =
            d.source.is_macro() ? nullptr : w.find_fap(d.source.value);
        const FapMode source_before = source ? source->mode : FapMode::FAM;
        apply_handover(d, ue, w.faps, w.registry);
        ++w.handovers;
        log_event(w, EventRecord::Kind::ServingChange, ue_name(ue.id),
                  to_string(d.source), to_string(d.target), "handover");
        if (w.mode == BaselineMode::Existing) {
            if (source != nullptr) {
                source->mode = FapMode::FAM;
                w.registry.active_fap_list.insert(source->site.id);
            }
        } else if (source != nullptr && source->mode != source_before) {
            log_event(w, EventRecord::Kind::FapModeChange,
                      fap_name(source->site.id), to_string(source_before),
                      to_string(source->mode), "no-demand");
        }
        break;
    }
    case HandoverDecision::Kind::Abort:
        ++w.aborts;
        log_event(w, EventRecord::Kind::Abort, ue_name(ue.id),
                  cell_name(ue.serving), to_string(d.target), d.reason);
        break;
    }
}

}  // namespace

std::string to_string(BaselineMode m) {
    return m == BaselineMode::Proposed ? "proposed" : "existing";
}

Layout build_layout(const ScenarioLayout& sl) {
    if (!sl.custom) {
        Layout layout = generate_default_layout(sl.cfg);
        layout.macro_pos = sl.macro;
        return layout;
    }
    Layout layout;
    layout.macro_pos = sl.macro;
    bool have_reference = false;
    for (FapSite site : sl.sites) {
        site.pos.z = kUePlaneHeight;
        site.radius_m = sl.cfg.cell_radius;
        if (site.tier == 0) {
            if (have_reference) {
                throw std::domain_error("layout: more than one tier-0 site");
            }
            layout.reference = site;
            have_reference = true;
        } else {
            layout.neighbors.push_back(site);
        }
    }
    if (!have_reference) {
        throw std::domain_error("layout: no tier-0 reference site");
    }
    layout.validate();
    return layout;
}

void Scenario::validate() const {
    radio.validate();
    build_layout(layout);
    if (ticks < 0) throw std::domain_error("ticks must be non-negative");
    if (!(tick_seconds > 0.0)) {
        throw std::domain_error("tick_seconds must be positive");
    }
    if (!(wake_radius > 0.0)) {
        throw std::domain_error("wake_radius must be positive");
    }
    if (trials < 1) throw std::domain_error("trials must be at least 1");
    if (!(ue_distance > 0.0)) {
        throw std::domain_error("ue_distance must be positive");
    }
    std::map<int32_t, UeState> fsm;
    for (const UeSpec& ue : ues) {
        if (!fsm.emplace(ue.id, UeState::Detached).second) {
            throw std::domain_error("duplicate ue id " + std::to_string(ue.id));
        }
    }
    int64_t last_tick = 1;
    for (const ScheduledEvent& ev : schedule) {
        const std::string where = "schedule tick " + std::to_string(ev.tick) +
                                  ", ue " + std::to_string(ev.ue_id) + ": ";
        if (ev.tick < 1) {
            throw std::domain_error(where + "event tick must be at least 1");
        }
        if (ev.tick < last_tick) {
            throw std::domain_error(where + "schedule not sorted by tick");
        }
        last_tick = ev.tick;
        const auto it = fsm.find(ev.ue_id);
        if (it == fsm.end()) {
            throw std::domain_error(where + "unknown ue");
        }
        UeState& state = it->second;
        switch (ev.kind) {
        case UeEventKind::PowerOn:
            if (state != UeState::Detached) {
                throw std::domain_error(where + "power_on while on");
            }
            state = UeState::Idle;
            break;
        case UeEventKind::PowerOff:
            if (state == UeState::Detached) {
                throw std::domain_error(where + "power_off while off");
            }
            state = UeState::Detached;
            break;
        case UeEventKind::CallStart:
            if (state != UeState::Idle) {
                throw std::domain_error(where + "call_start while " +
                                        to_string(state));
            }
            state = UeState::Active;
            break;
        case UeEventKind::CallEnd:
            if (state != UeState::Active) {
                throw std::domain_error(where + "call_end while " +
                                        to_string(state));
            }
            state = UeState::Idle;
            break;
        case UeEventKind::Move:
            throw std::domain_error(where + "move is not a schedulable event");
        }
    }
}

FapNode* World::find_fap(int32_t id) {
    for (FapNode& fap : faps) {
        if (fap.site.id == id) return &fap;
    }
    return nullptr;
}

const FapNode* World::find_fap(int32_t id) const {
    for (const FapNode& fap : faps) {
        if (fap.site.id == id) return &fap;
    }
    return nullptr;
}

UeNode* World::find_ue(int32_t id) {
    for (UeNode& ue : ues) {
        if (ue.id == id) return &ue;
    }
    return nullptr;
}

RadioEnvironment World::env() const { return RadioEnvironment{&cfg, &layout, &faps}; }

World make_world(const Scenario& sc) {
    sc.validate();
    World w;
    w.cfg = sc.radio;
    w.layout = build_layout(sc.layout);
    w.mode = sc.mode;
    w.tick_seconds = sc.tick_seconds;
    w.wake_radius = sc.wake_radius;
    w.schedule = sc.schedule;

    const FapMode initial =
        sc.mode == BaselineMode::Existing ? FapMode::FAM : FapMode::FIM;
    w.faps.push_back(FapNode{w.layout.reference, initial});
    for (const FapSite& site : w.layout.neighbors) {
        w.faps.push_back(FapNode{site, initial});
    }
    for (int32_t id : sc.link_faults) {
        FapNode* fap = w.find_fap(id);
        if (fap == nullptr) {
            throw std::domain_error("link fault for unknown fap " +
                                    std::to_string(id));
        }
        fap->link_ok = false;
    }
    if (sc.mode == BaselineMode::Existing) {
        for (const FapNode& fap : w.faps) {
            w.registry.active_fap_list.insert(fap.site.id);
        }
    }
    for (const UeSpec& spec : sc.ues) {
        w.ues.push_back(UeNode{spec.id,
                               Position{spec.x, spec.y, kUePlaneHeight},
                               UeState::Detached, std::nullopt, spec.vx,
                               spec.vy});
    }
    std::sort(w.ues.begin(), w.ues.end(),
              [](const UeNode& a, const UeNode& b) { return a.id < b.id; });
    return w;
}

void step(World& w) {
    ++w.tick;

    while (w.next_event < w.schedule.size() &&
           w.schedule[w.next_event].tick == w.tick) {
        apply_scheduled_event(w, w.schedule[w.next_event]);
        ++w.next_event;
    }

    for (UeNode& ue : w.ues) {
        ue.pos.x += ue.vx * w.tick_seconds;
        ue.pos.y += ue.vy * w.tick_seconds;
    }
    for (UeNode& ue : w.ues) {
        if (ue.state == UeState::Idle) recamp(w, ue, "reselect");
    }

    fgw_share(w.registry, w.tick, w.faps, w.ues, w.cfg);

    // A wake request stays pending only while some active UE that the FAP
    // does not serve yet remains within wake_radius; otherwise the demand
    // that created it is gone.
    if (w.mode == BaselineMode::Proposed) {
        for (FapNode& fap : w.faps) {
            if (!fap.pending_wake) continue;
            bool keep = false;
            for (const UeNode& ue : w.ues) {
                if (ue.state != UeState::Active) continue;
                if (ue.serving && *ue.serving == CellId::fap(fap.site.id)) {
                    continue;
                }
                if (distance(ue.pos, fap.site.pos) < w.wake_radius) {
                    keep = true;
                    break;
                }
            }
            if (!keep) fap.pending_wake = false;
        }
    }

    const RadioEnvironment env = w.env();
    for (UeNode& ue : w.ues) {
        if (ue.state == UeState::Active) evaluate_active_ue(w, ue, env);
    }

    for (FapNode& fap : w.faps) {
        settle_and_log(w, fap, demand(fap) ? "demand" : "no-demand");
    }

    for (const FapNode& fap : w.faps) {
        if (fap.mode == FapMode::FAM) ++w.fam_ticks;
    }

    check_invariants(w);
}

void check_invariants(const World& w) {
    const auto fail = [](const std::string& what) {
        throw protocol_error("invariant: " + what);
    };
    const auto find_ue = [&](int32_t id) -> const UeNode* {
        for (const UeNode& ue : w.ues) {
            if (ue.id == id) return &ue;
        }
        return nullptr;
    };

    std::set<int32_t> attached_anywhere;
    for (const FapNode& fap : w.faps) {
        const std::string name = fap_name(fap.site.id);
        if (w.mode == BaselineMode::Existing) {
            if (fap.mode != FapMode::FAM) {
                fail(name + " left active mode in the always-on baseline");
            }
        } else if ((fap.mode == FapMode::FAM) != demand(fap)) {
            fail(name + " mode out of sync with demand");
        }
        if ((w.registry.active_fap_list.count(fap.site.id) > 0) !=
            (fap.mode == FapMode::FAM)) {
            fail(name + " stale in the registry active list");
        }
        for (int32_t ue_id : fap.attached_active) {
            if (!attached_anywhere.insert(ue_id).second) {
                fail(ue_name(ue_id) + " attached to two FAPs");
            }
            const UeNode* ue = find_ue(ue_id);
            if (ue == nullptr) fail(name + " lists a missing ue");
            if (ue->state != UeState::Active) {
                fail(ue_name(ue_id) + " attached while not active");
            }
            if (!ue->serving || *ue->serving != CellId::fap(fap.site.id)) {
                fail(ue_name(ue_id) + " attachment does not match serving");
            }
        }
    }

    for (const UeNode& ue : w.ues) {
        switch (ue.state) {
        case UeState::Detached:
            if (ue.serving) fail(ue_name(ue.id) + " detached but camped");
            break;
        case UeState::Idle:
            if (!ue.serving) fail(ue_name(ue.id) + " idle without a cell");
            break;
        case UeState::Active: {
            if (!ue.serving) fail(ue_name(ue.id) + " active without a cell");
            if (ue.serving->is_macro()) break;
            const FapNode* fap = w.find_fap(ue.serving->value);
            if (fap == nullptr) fail(ue_name(ue.id) + " serving fap missing");
            if (fap->mode != FapMode::FAM) {
                fail(ue_name(ue.id) + " served by an idle-mode fap");
            }
            if (fap->attached_active.count(ue.id) == 0) {
                fail(ue_name(ue.id) + " serving fap does not list it");
            }
            break;
        }
        }
    }
}

std::string to_text(const RunSummary& s) {
    char duty[32];
    std::snprintf(duty, sizeof duty, "%.6g", s.energy_duty);
    std::string out;
    out += "ticks " + std::to_string(s.ticks) + "\n";
    out += "handovers " + std::to_string(s.handovers) + "\n";
    out += "aborts " + std::to_string(s.aborts) + "\n";
    out += "wakes " + std::to_string(s.wakes) + "\n";
    out += "energy_duty " + std::string(duty) + "\n";
    return out;
}

RunResult run_scenario(const Scenario& sc) {
    World w = make_world(sc);
    for (int64_t i = 0; i < sc.ticks; ++i) {
        try {
            step(w);
        } catch (const protocol_error& e) {
            throw protocol_error("tick " + std::to_string(w.tick) + ": " +
                                 e.what());
        }
    }
    RunResult result;
    result.summary.ticks = sc.ticks;
    result.summary.handovers = w.handovers;
    result.summary.aborts = w.aborts;
    result.summary.wakes = w.wakes;
    const int64_t slots = sc.ticks * static_cast<int64_t>(w.faps.size());
    result.summary.energy_duty =
        slots > 0 ? static_cast<double>(w.fam_ticks) / slots : 0.0;
    result.log = std::move(w.log);
    return result;
}

namespace {

double site_rx(const RadioConfig& cfg, const FapSite& site,
               const Position& ue) {
    const double d = std::max(distance(site.pos, ue), kMinLinkDistance);
    const double loss =
        site.walls == 0
            ? path_loss_reference(cfg.f_ue, d, cfg.n_coeff)
            : path_loss_neighbor(cfg.f_ue, d, cfg.n_coeff, site.walls);
    return received_power(cfg.p0_fap, loss);
}

// Downlink SNIR of the reference UE for one realization of neighbor modes.
double snapshot_snir(const RadioConfig& cfg, const Layout& layout,
                     const Position& ue, const std::vector<bool>& fam) {
    const double rx = site_rx(cfg, layout.reference, ue);
    InterferenceBreakdown intf;
    for (std::size_t i = 0; i < layout.neighbors.size(); ++i) {
        const double p = site_rx(cfg, layout.neighbors[i], ue);
        if (fam[i]) {
            intf.i_active_mw += p;
        } else {
            intf.i_idle_mw += cfg.beacon_duty * p;
        }
    }
    intf.i_macro_mw = macro_interference(cfg);
    return snir_linear(rx, intf, cfg.noise_power);
}

SeriesAggregate aggregate_series(std::vector<double> linear_samples,
                                 const RadioConfig& cfg, bool keep_samples) {
    SeriesAggregate agg;
    const std::size_t n = linear_samples.size();
    double db_sum = 0.0;
    for (double s : linear_samples) {
        agg.snir_linear_mean += s;
        agg.throughput_bps += capacity(cfg.bandwidth_w, s);
        db_sum += db_from_linear(s);
    }
    agg.snir_linear_mean /= static_cast<double>(n);
    agg.throughput_bps /= static_cast<double>(n);
    agg.snir_db_mean = db_sum / static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0;
        for (double s : linear_samples) {
            const double d = db_from_linear(s) - agg.snir_db_mean;
            ss += d * d;
        }
        agg.snir_db_std = std::sqrt(ss / static_cast<double>(n - 1));
    }
    if (keep_samples) agg.snir_linear_samples = std::move(linear_samples);
    return agg;
}

void validate_sweep_spec(const SweepSpec& spec) {
    spec.radio.validate();
    if (spec.trials < 1) throw std::domain_error("trials must be at least 1");
    if (!(spec.ue_distance > 0.0)) {
        throw std::domain_error("ue_distance must be positive");
    }
}

uint64_t trial_stream(const SweepSpec& spec, std::size_t point,
                      int32_t trial) {
    const uint64_t a =
        spec.common_random_numbers ? 0 : static_cast<uint64_t>(point) + 1;
    return derive_stream(spec.seed, a, static_cast<uint64_t>(trial));
}

}  // namespace

SweepResult run_probability_sweep(const SweepSpec& spec,
                                  const std::vector<double>& probabilities) {
    validate_sweep_spec(spec);
    const Layout layout = generate_default_layout(spec.layout);
    const Position ue = place_reference_ue(layout, spec.ue_distance);
    const std::size_t n = layout.neighbors.size();

    const double existing_snir =
        snapshot_snir(spec.radio, layout, ue, std::vector<bool>(n, true));

    SweepResult out;
    out.sweep_kind = "probability";
    for (std::size_t pi = 0; pi < probabilities.size(); ++pi) {
        const double p = probabilities[pi];
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::domain_error("probability outside [0, 1]");
        }
        std::vector<double> samples(spec.trials);
        double fam_fraction = 0.0;
        std::vector<bool> fam(n);
        for (int32_t t = 0; t < spec.trials; ++t) {
            SplitMix64 rng(trial_stream(spec, pi, t));
            int active = 0;
            for (std::size_t i = 0; i < n; ++i) {
                fam[i] = rng.u01() < p;
                if (fam[i]) ++active;
            }
            samples[t] = snapshot_snir(spec.radio, layout, ue, fam);
            fam_fraction += static_cast<double>(active) / static_cast<double>(n);
        }
        SweepPoint pt;
        pt.sweep_value = p;
        pt.proposed =
            aggregate_series(std::move(samples), spec.radio, spec.keep_samples);
        pt.existing = aggregate_series(
            std::vector<double>(spec.trials, existing_snir), spec.radio,
            spec.keep_samples);
        pt.proposed_active_fraction =
            fam_fraction / static_cast<double>(spec.trials);
        pt.energy_duty = pt.proposed_active_fraction;
        pt.trials = spec.trials;
        out.points.push_back(std::move(pt));
    }
    return out;
}

SweepResult run_count_sweep(const SweepSpec& spec,
                            const std::vector<int>& counts) {
    validate_sweep_spec(spec);
    const Layout layout = generate_default_layout(spec.layout);
    const Position ue = place_reference_ue(layout, spec.ue_distance);
    const std::size_t n = layout.neighbors.size();

    const double existing_snir =
        snapshot_snir(spec.radio, layout, ue, std::vector<bool>(n, true));

    SweepResult out;
    out.sweep_kind = "count";
    for (std::size_t ki = 0; ki < counts.size(); ++ki) {
        const int k = counts[ki];
        if (k < 0 || static_cast<std::size_t>(k) > n) {
            throw std::domain_error("active count outside [0, neighbors]");
        }
        std::vector<double> samples(spec.trials);
        std::vector<bool> fam(n);
        for (int32_t t = 0; t < spec.trials; ++t) {
            SplitMix64 rng(trial_stream(spec, ki, t));
            const std::vector<std::size_t> perm = random_permutation(n, rng);
            std::fill(fam.begin(), fam.end(), false);
            for (int i = 0; i < k; ++i) fam[perm[i]] = true;
            samples[t] = snapshot_snir(spec.radio, layout, ue, fam);
        }
        SweepPoint pt;
        pt.sweep_value = static_cast<double>(k);
        pt.proposed =
            aggregate_series(std::move(samples), spec.radio, spec.keep_samples);
        pt.existing = aggregate_series(
            std::vector<double>(spec.trials, existing_snir), spec.radio,
            spec.keep_samples);
        pt.proposed_active_fraction =
            static_cast<double>(k) / static_cast<double>(n);
        pt.energy_duty = pt.proposed_active_fraction;
        pt.trials = spec.trials;
        out.points.push_back(std::move(pt));
    }
    return out;
}

std::vector<double> probability_sweep_points() {
    std::vector<double> points;
    for (int i = 0; i <= 10; ++i) points.push_back(i / 10.0);
    return points;
}

std::vector<int> count_sweep_points() {
    std::vector<int> points;
    for (int k = 0; k <= 15; ++k) points.push_back(k);
    return points;
}

}  // namespace femtosim
