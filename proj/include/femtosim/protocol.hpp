#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "femtosim/radio.hpp"
#include "femtosim/topology.hpp"

namespace femtosim {

// Illegal transition or a handover applied against the protocol rules.
class protocol_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class UeState { Detached, Idle, Active };
enum class FapMode { FIM, FAM };

const char* to_string(UeState s);
const char* to_string(FapMode m);

// A serving cell: one of the FAPs, or the always-on macro BS.
struct CellId {
    static constexpr int32_t kMacro = -1;

    int32_t value = kMacro;

    static CellId macro() { return CellId{kMacro}; }
    static CellId fap(int32_t id) { return CellId{id}; }
    bool is_macro() const { return value == kMacro; }

    auto operator<=>(const CellId&) const = default;
};

std::string to_string(CellId cell);

struct UeNode {
    int32_t id = 0;
    Position pos;
    UeState state = UeState::Detached;
    std::optional<CellId> serving;
    double vx = 0.0; // m/s
    double vy = 0.0;
};

struct FapNode {
    FapSite site;
    FapMode mode = FapMode::FIM;
    std::set<int32_t> attached_active;
    bool pending_wake = false;
    bool link_ok = true; // FGW backhaul check input, scenario-controlled
};

struct NeighborReport {
    double rss_db = 0.0;
    int64_t tick = 0;
};

struct UeDistanceReport {
    int32_t serving_fap = 0;
    double distance_m = 0.0;
    int64_t tick = 0;
};

// Book-keeping shared under one femto gateway: which FAPs are active,
// their monitored signal strength, and the distance of every active
// femto user to its serving FAP.
struct FgwRegistry {
    std::set<int32_t> active_fap_list;
    std::map<int32_t, NeighborReport> neighbor_rss;
    std::map<int32_t, UeDistanceReport> ue_distance;
};

enum class UeEventKind { PowerOn, PowerOff, CallStart, CallEnd, Move };

const char* to_string(UeEventKind k);

struct UeEvent {
    UeEventKind kind = UeEventKind::PowerOn;
    double dx = 0.0; // Move only
    double dy = 0.0;
};

// UE state machine. Throws protocol_error on an illegal transition
// (call_start outside Idle, call_end outside Active, events on the
// wrong power state). CallStart requires a camped serving cell.
UeNode ue_event(UeNode ue, const UeEvent& event);

// True iff the FAP has an attached active user or a pending wake request.
bool demand(const FapNode& fap);

// Aligns mode with demand and keeps the registry's active list consistent.
// Returns true when the mode changed.
bool settle_fap_mode(FapNode& fap, FgwRegistry& registry);

struct HandoverDecision {
    enum class Kind { NoAction, WakeTarget, Execute, Abort };

    Kind kind = Kind::NoAction;
    CellId source = CellId::macro(); // Execute
    CellId target = CellId::macro(); // WakeTarget / Execute / Abort
    std::string reason;              // Abort: "gamma_inner" or "link"
};

// Read-only radio view over the current cell modes, answering downlink
// SNIR queries for any (cell, position) pair. Femto links use the indoor
// model; the macro link uses free-space loss plus wall penetration, with
// cross-band terms scaled by the coupling factor.
struct RadioEnvironment {
    const RadioConfig* cfg = nullptr;
    const Layout* layout = nullptr;
    const std::vector<FapNode>* faps = nullptr;

    double cell_signal_mw(CellId cell, const Position& ue_pos) const;
    InterferenceBreakdown cell_interference(CellId cell,
                                            const Position& ue_pos) const;
    double cell_snir_linear(CellId cell, const Position& ue_pos) const;
    double cell_snir_db(CellId cell, const Position& ue_pos) const;
};

// The on-demand handover evaluator for one active UE, first match wins:
//   Execute  - serving SNIR below gamma_outer and the best active-mode
//              candidate (femto in FAM, or the macro) reaches gamma_inner
//              with its gateway link check passing;
//   WakeTarget - the nearest idle-mode FAP within wake_radius that has no
//              pending wake yet (demand creation, checked regardless of
//              serving quality: waking is what produces a candidate);
//   Abort    - leaving condition held and candidates existed, but every
//              one failed the entry threshold or the link check;
//   NoAction - nothing else applies.
// Candidate ties break toward higher SNIR, then lower FAP id.
// Throws protocol_error when the UE is not Active.
HandoverDecision evaluate_handover(const UeNode& ue,
                                   const RadioEnvironment& env,
                                   const FgwRegistry& registry,
                                   double wake_radius);

// Applies an Execute decision: reassigns the UE, re-settles the source
// FAP (it may drop to idle mode), clears the target's pending wake, and
// updates the registry. Throws protocol_error if the target FAP is not
// in FAM at execution time.
void apply_handover(const HandoverDecision& decision, UeNode& ue,
                    std::vector<FapNode>& faps, FgwRegistry& registry);

// Refreshes the registry for every FAM FAP: its monitored signal strength
// at the analysis-plane origin and one distance report per attached
// active UE. Idle FAPs are not polled. Stale reports for deactivated
// FAPs or departed UEs are dropped.
void fgw_share(FgwRegistry& registry, int64_t tick,
               const std::vector<FapNode>& faps,
               const std::vector<UeNode>& ues, const RadioConfig& cfg);

// One structured log record per transition or handover decision.
struct EventRecord {
    enum class Kind { UeStateChange, FapModeChange, ServingChange, Wake, Abort };

    int64_t tick = 0;
    Kind kind = Kind::UeStateChange;
    std::string entity;
    std::string from;
    std::string to;
    std::string cause;
};

std::string to_line(const EventRecord& record);

using EventLog = std::vector<EventRecord>;

std::string to_text(const EventLog& log);

} // namespace femtosim
