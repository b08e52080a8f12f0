#include "femtosim/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace femtosim {

namespace {

double link_distance(const Position& a, const Position& b) {
    return std::max(distance(a, b), kMinLinkDistance);
}

} // namespace

const char* to_string(UeState s) {
    switch (s) {
    case UeState::Detached: return "detached";
    case UeState::Idle: return "idle";
    case UeState::Active: return "active";
    }
    return "?";
}

const char* to_string(FapMode m) {
    return m == FapMode::FIM ? "fim" : "fam";
}

const char* to_string(UeEventKind k) {
    switch (k) {
    case UeEventKind::PowerOn: return "power_on";
    case UeEventKind::PowerOff: return "power_off";
    case UeEventKind::CallStart: return "call_start";
    case UeEventKind::CallEnd: return "call_end";
    case UeEventKind::Move: return "move";
    }
    return "?";
}

std::string to_string(CellId cell) {
    return cell.is_macro() ? "macro" : "fap:" + std::to_string(cell.value);
}

UeNode ue_event(UeNode ue, const UeEvent& event) {
    const auto fail = [&](const char* what) {
        throw protocol_error("ue " + std::to_string(ue.id) + ": " + what +
                             " while " + to_string(ue.state));
    };
    switch (event.kind) {
    case UeEventKind::PowerOn:
        if (ue.state != UeState::Detached) fail("power_on");
        ue.state = UeState::Idle;
        break;
    case UeEventKind::PowerOff:
        if (ue.state == UeState::Detached) fail("power_off");
        ue.state = UeState::Detached;
        ue.serving.reset();
        break;
    case UeEventKind::CallStart:
        if (ue.state != UeState::Idle) fail("call_start");
        if (!ue.serving) fail("call_start with no camped cell");
        ue.state = UeState::Active;
        break;
    case UeEventKind::CallEnd:
        if (ue.state != UeState::Active) fail("call_end");
        ue.state = UeState::Idle; // stays camped on the current cell
        break;
    case UeEventKind::Move:
        ue.pos.x += event.dx;
        ue.pos.y += event.dy;
        break;
    }
    return ue;
}

bool demand(const FapNode& fap) {
    return !fap.attached_active.empty() || fap.pending_wake;
}

bool settle_fap_mode(FapNode& fap, FgwRegistry& registry) {
    const FapMode wanted = demand(fap) ? FapMode::FAM : FapMode::FIM;
    if (wanted == FapMode::FAM) {
        registry.active_fap_list.insert(fap.site.id);
    } else {
        registry.active_fap_list.erase(fap.site.id);
        registry.neighbor_rss.erase(fap.site.id);
    }
    if (fap.mode == wanted) {
        return false;
    }
    fap.mode = wanted;
    return true;
}

double RadioEnvironment::cell_signal_mw(CellId cell, const Position& ue_pos) const {
    if (cell.is_macro()) {
        const double loss = free_space_loss_db(
                                link_distance(ue_pos, layout->macro_pos), cfg->f_ue) +
                            cfg->macro_wall_loss;
        return received_power(cfg->p_macro, loss);
    }
    const FapSite* site = layout->find(cell.value);
    if (site == nullptr) {
        throw protocol_error("unknown FAP id " + std::to_string(cell.value));
    }
    const double loss = path_loss_reference(
        cfg->f_ue, link_distance(ue_pos, site->pos), cfg->n_coeff);
    return received_power(cfg->p0_fap, loss);
}

InterferenceBreakdown RadioEnvironment::cell_interference(
    CellId cell, const Position& ue_pos) const {
    InterferenceBreakdown intf;
    for (const FapNode& fap : *faps) {
        if (!cell.is_macro() && fap.site.id == cell.value) {
            continue; // the serving FAP is the signal, not interference
        }
        const double loss = path_loss_neighbor(cfg->f_ue,
                                               link_distance(ue_pos, fap.site.pos),
                                               cfg->n_coeff, fap.site.walls);
        const double rx = received_power(cfg->p0_fap, loss);
        if (fap.mode == FapMode::FAM) {
            intf.i_active_mw += rx;
        } else {
            intf.i_idle_mw += cfg->beacon_duty * rx;
        }
    }
    if (cell.is_macro()) {
        // The UE sits on the macro band; femto emissions couple into it
        // with the same cross-band factor, and no other macro BS exists.
        intf.i_active_mw *= cfg->macro_coupling;
        intf.i_idle_mw *= cfg->macro_coupling;
        intf.i_macro_mw = 0.0;
    } else {
        intf.i_macro_mw = macro_interference(*cfg);
    }
    return intf;
}

double RadioEnvironment::cell_snir_linear(CellId cell, const Position& ue_pos) const {
    return snir_linear(cell_signal_mw(cell, ue_pos),
                       cell_interference(cell, ue_pos), cfg->noise_power);
}

double RadioEnvironment::cell_snir_db(CellId cell, const Position& ue_pos) const {
    return db_from_linear(cell_snir_linear(cell, ue_pos));
}

HandoverDecision evaluate_handover(const UeNode& ue, const RadioEnvironment& env,
                                   const FgwRegistry&, double wake_radius) {
    if (ue.state != UeState::Active) {
        throw protocol_error("handover evaluation for non-active ue " +
                             std::to_string(ue.id));
    }
    const CellId serving = *ue.serving;
    const double serving_snir = env.cell_snir_db(serving, ue.pos);

    // Leaving condition: below gamma_outer, rank the active-mode candidates.
    struct Candidate {
        CellId cell;
        double snir_db;
        bool link_ok;
    };
    std::vector<Candidate> candidates;
    if (serving_snir < env.cfg->gamma_outer) {
        for (const FapNode& fap : *env.faps) {
            if (fap.mode != FapMode::FAM) continue;
            const CellId cell = CellId::fap(fap.site.id);
            if (cell == serving) continue;
            candidates.push_back(
                {cell, env.cell_snir_db(cell, ue.pos), fap.link_ok});
        }
        if (!serving.is_macro()) {
            candidates.push_back(
                {CellId::macro(), env.cell_snir_db(CellId::macro(), ue.pos), true});
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Candidate& a, const Candidate& b) {
                             if (a.snir_db != b.snir_db)
                                 return a.snir_db > b.snir_db;
                             return a.cell.value < b.cell.value;
                         });
        if (!candidates.empty() &&
            candidates.front().snir_db >= env.cfg->gamma_inner &&
            candidates.front().link_ok) {
            HandoverDecision d;
            d.kind = HandoverDecision::Kind::Execute;
            d.source = serving;
            d.target = candidates.front().cell;
            return d;
        }
    }

    // Demand creation: an active UE close to the edge of an idle FAP wakes
    // it so it can serve as a handover target. Checked before declaring an
    // abort, since waking is what produces a viable candidate.
    const FapNode* wake = nullptr;
    double wake_dist = wake_radius;
    for (const FapNode& fap : *env.faps) {
        if (fap.mode != FapMode::FIM || fap.pending_wake) continue;
        if (CellId::fap(fap.site.id) == serving) continue;
        const double d = distance(ue.pos, fap.site.pos);
        if (d < wake_dist) {
            wake = &fap;
            wake_dist = d;
        }
    }
    if (wake != nullptr) {
        HandoverDecision d;
        d.kind = HandoverDecision::Kind::WakeTarget;
        d.target = CellId::fap(wake->site.id);
        return d;
    }

    if (!candidates.empty()) {
        HandoverDecision d;
        d.kind = HandoverDecision::Kind::Abort;
        d.target = candidates.front().cell;
        d.reason = candidates.front().snir_db < env.cfg->gamma_inner
                       ? "gamma_inner"
                       : "link";
        return d;
    }
    return HandoverDecision{};
}

void apply_handover(const HandoverDecision& decision, UeNode& ue,
                    std::vector<FapNode>& faps, FgwRegistry& registry) {
    if (decision.kind != HandoverDecision::Kind::Execute) {
        throw protocol_error("apply_handover requires an Execute decision");
    }
    FapNode* source = nullptr;
    FapNode* target = nullptr;
    for (FapNode& fap : faps) {
        if (!decision.source.is_macro() && fap.site.id == decision.source.value)
            source = &fap;
        if (!decision.target.is_macro() && fap.site.id == decision.target.value)
            target = &fap;
    }
    if (target != nullptr && target->mode != FapMode::FAM) {
        throw protocol_error("handover into idle-mode fap:" +
                             std::to_string(target->site.id) +
                             " (wake must precede execute)");
    }
    if (source != nullptr) {
        source->attached_active.erase(ue.id);
        registry.ue_distance.erase(ue.id);
        settle_fap_mode(*source, registry); // may drop to FIM
    }
    ue.serving = decision.target;
    if (target != nullptr) {
        target->attached_active.insert(ue.id);
        target->pending_wake = false;
        settle_fap_mode(*target, registry);
    }
}

void fgw_share(FgwRegistry& registry, int64_t tick,
               const std::vector<FapNode>& faps, const std::vector<UeNode>& ues,
               const RadioConfig& cfg) {
    registry.neighbor_rss.clear();
    registry.ue_distance.clear();
    const Position origin{0.0, 0.0, kUePlaneHeight};
    for (const FapNode& fap : faps) {
        if (fap.mode != FapMode::FAM) {
            continue; // idle FAPs only beacon; the FGW does not poll them
        }
        const double loss =
            fap.site.walls == 0
                ? path_loss_reference(cfg.f_ue,
                                      std::max(distance(fap.site.pos, origin),
                                               kMinLinkDistance),
                                      cfg.n_coeff)
                : path_loss_neighbor(cfg.f_ue,
                                     std::max(distance(fap.site.pos, origin),
                                              kMinLinkDistance),
                                     cfg.n_coeff, fap.site.walls);
        registry.neighbor_rss[fap.site.id] = NeighborReport{
            db_from_linear(received_power(cfg.p0_fap, loss)), tick};
        for (const UeNode& ue : ues) {
            if (ue.state == UeState::Active &&
                fap.attached_active.contains(ue.id)) {
                registry.ue_distance[ue.id] = UeDistanceReport{
                    fap.site.id, distance(ue.pos, fap.site.pos), tick};
            }
        }
    }
}

std::string to_line(const EventRecord& record) {
    const char* kind = "?";
    switch (record.kind) {
    case EventRecord::Kind::UeStateChange: kind = "ue-state"; break;
    case EventRecord::Kind::FapModeChange: kind = "fap-mode"; break;
    case EventRecord::Kind::ServingChange: kind = "serving"; break;
    case EventRecord::Kind::Wake: kind = "wake"; break;
    case EventRecord::Kind::Abort: kind = "abort"; break;
    }
    std::ostringstream out;
    out << record.tick << ' ' << kind << ' ' << record.entity << ' '
        << (record.from.empty() ? "-" : record.from) << ' '
        << (record.to.empty() ? "-" : record.to) << ' '
        << (record.cause.empty() ? "-" : record.cause);
    return out.str();
}

std::string to_text(const EventLog& log) {
    std::string out;
    for (const EventRecord& record : log) {
        out += to_line(record);
        out += '\n';
    }
    return out;
}

} // namespace femtosim
