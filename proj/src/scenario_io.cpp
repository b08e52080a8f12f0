#include "femtosim/scenario_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace femtosim {

namespace {

std::string trim(const std::string& s) {
    const char* ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

struct Cursor {
    int line = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw scenario_parse_error(line,
                                   "line " + std::to_string(line) + ": " + msg);
    }
};

double parse_double(const Cursor& c, const std::string& v) {
    if (v.empty()) c.fail("empty value");
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size()) c.fail("bad number '" + v + "'");
    return out;
}

long long parse_int(const Cursor& c, const std::string& v) {
    if (v.empty()) c.fail("empty value");
    char* end = nullptr;
    const long long out = std::strtoll(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size()) c.fail("bad integer '" + v + "'");
    return out;
}

unsigned long long parse_uint(const Cursor& c, const std::string& v) {
    if (v.empty()) c.fail("empty value");
    if (v[0] == '-') c.fail("bad unsigned integer '" + v + "'");
    char* end = nullptr;
    const unsigned long long out = std::strtoull(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size()) c.fail("bad unsigned integer '" + v + "'");
    return out;
}

int32_t parse_i32(const Cursor& c, const std::string& v) {
    const long long out = parse_int(c, v);
    if (out < std::numeric_limits<int32_t>::min() ||
        out > std::numeric_limits<int32_t>::max()) {
        c.fail("integer out of range '" + v + "'");
    }
    return static_cast<int32_t>(out);
}

std::vector<std::string> split_ws(const std::string& v) {
    std::vector<std::string> out;
    std::istringstream in(v);
    std::string token;
    while (in >> token) out.push_back(std::move(token));
    return out;
}

UeEventKind event_kind_from(const Cursor& c, const std::string& name) {
    for (UeEventKind k : {UeEventKind::PowerOn, UeEventKind::PowerOff,
                          UeEventKind::CallStart, UeEventKind::CallEnd}) {
        if (name == to_string(k)) return k;
    }
    c.fail("unknown event kind '" + name + "'");
}

const std::vector<std::pair<const char*, double RadioConfig::*>>&
radio_fields() {
    static const std::vector<std::pair<const char*, double RadioConfig::*>>
        fields = {
            {"f_ue", &RadioConfig::f_ue},
            {"n_coeff", &RadioConfig::n_coeff},
            {"p0_fap", &RadioConfig::p0_fap},
            {"p_macro", &RadioConfig::p_macro},
            {"noise_power", &RadioConfig::noise_power},
            {"bandwidth_w", &RadioConfig::bandwidth_w},
            {"gamma_inner", &RadioConfig::gamma_inner},
            {"gamma_outer", &RadioConfig::gamma_outer},
            {"macro_coupling", &RadioConfig::macro_coupling},
            {"beacon_duty", &RadioConfig::beacon_duty},
            {"macro_distance", &RadioConfig::macro_distance},
            {"macro_wall_loss", &RadioConfig::macro_wall_loss},
        };
    return fields;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario sc;
    enum class Section { None, Radio, Layout, Schedule, Sweep };
    Section section = Section::None;
    Cursor cur;
    std::set<std::string> sections_seen;
    std::set<std::string> keys_seen;
    bool layout_keys_started = false;
    int layout_line = 0;

    const auto scalar_once = [&](const std::string& name) {
        if (!keys_seen.insert(name).second) {
            cur.fail("duplicate key '" + name.substr(name.find('.') + 1) + "'");
        }
    };

    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++cur.line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') cur.fail("unterminated section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (!sections_seen.insert(name).second) {
                cur.fail("section [" + name + "] given twice");
            }
            if (name == "radio") {
                section = Section::Radio;
            } else if (name == "layout") {
                section = Section::Layout;
                layout_line = cur.line;
            } else if (name == "schedule") {
                section = Section::Schedule;
            } else if (name == "sweep") {
                section = Section::Sweep;
            } else {
                cur.fail("unknown section [" + name + "]");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) cur.fail("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) cur.fail("missing key before '='");
        if (section == Section::None) {
            cur.fail("key '" + key + "' outside any section");
        }

        switch (section) {
        case Section::None:
            break;
        case Section::Radio: {
            bool matched = false;
            for (const auto& [name, member] : radio_fields()) {
                if (key == name) {
                    scalar_once("radio." + key);
                    sc.radio.*member = parse_double(cur, value);
                    matched = true;
                    break;
                }
            }
            if (!matched) cur.fail("unknown key '" + key + "' in [radio]");
            break;
        }
        case Section::Layout: {
            if (key == "kind") {
                if (layout_keys_started) {
                    cur.fail("'kind' must come before other layout keys");
                }
                scalar_once("layout.kind");
                if (value == "default") {
                    sc.layout.custom = false;
                } else if (value == "custom") {
                    sc.layout.custom = true;
                } else {
                    cur.fail("layout kind must be 'default' or 'custom'");
                }
                break;
            }
            layout_keys_started = true;
            if (key == "cell_radius") {
                scalar_once("layout.cell_radius");
                sc.layout.cfg.cell_radius = parse_double(cur, value);
            } else if (key == "fap_height") {
                scalar_once("layout.fap_height");
                sc.layout.cfg.fap_height = parse_double(cur, value);
            } else if (key == "macro_x") {
                scalar_once("layout.macro_x");
                sc.layout.macro.x = parse_double(cur, value);
            } else if (key == "macro_y") {
                scalar_once("layout.macro_y");
                sc.layout.macro.y = parse_double(cur, value);
            } else if (key == "macro_height") {
                scalar_once("layout.macro_height");
                sc.layout.macro.z = parse_double(cur, value);
            } else if (key == "tier1_count" || key == "tier1_radius" ||
                       key == "tier2_count" || key == "tier2_radius") {
                if (sc.layout.custom) {
                    cur.fail("'" + key + "' applies to the default layout");
                }
                scalar_once("layout." + key);
                if (key == "tier1_count") {
                    sc.layout.cfg.tier1_count = parse_i32(cur, value);
                } else if (key == "tier1_radius") {
                    sc.layout.cfg.tier1_radius = parse_double(cur, value);
                } else if (key == "tier2_count") {
                    sc.layout.cfg.tier2_count = parse_i32(cur, value);
                } else {
                    sc.layout.cfg.tier2_radius = parse_double(cur, value);
                }
            } else if (key == "fap") {
                if (!sc.layout.custom) {
                    cur.fail("'fap' sites require kind = custom");
                }
                const auto tok = split_ws(value);
                if (tok.size() != 5) {
                    cur.fail("expected 'fap = id x y tier walls'");
                }
                FapSite site;
                site.id = parse_i32(cur, tok[0]);
                site.pos.x = parse_double(cur, tok[1]);
                site.pos.y = parse_double(cur, tok[2]);
                site.tier = parse_i32(cur, tok[3]);
                site.walls = parse_i32(cur, tok[4]);
                sc.layout.sites.push_back(site);
            } else {
                cur.fail("unknown key '" + key + "' in [layout]");
            }
            break;
        }
        case Section::Schedule: {
            if (key == "mode") {
                scalar_once("schedule.mode");
                if (value == "proposed") {
                    sc.mode = BaselineMode::Proposed;
                } else if (value == "existing") {
                    sc.mode = BaselineMode::Existing;
                } else {
                    cur.fail("mode must be 'proposed' or 'existing'");
                }
            } else if (key == "ticks") {
                scalar_once("schedule.ticks");
                sc.ticks = parse_int(cur, value);
            } else if (key == "tick_seconds") {
                scalar_once("schedule.tick_seconds");
                sc.tick_seconds = parse_double(cur, value);
            } else if (key == "seed") {
                scalar_once("schedule.seed");
                sc.seed = parse_uint(cur, value);
            } else if (key == "wake_radius") {
                scalar_once("schedule.wake_radius");
                sc.wake_radius = parse_double(cur, value);
            } else if (key == "ue") {
                const auto tok = split_ws(value);
                if (tok.size() != 5) {
                    cur.fail("expected 'ue = id x y vx vy'");
                }
                UeSpec ue;
                ue.id = parse_i32(cur, tok[0]);
                ue.x = parse_double(cur, tok[1]);
                ue.y = parse_double(cur, tok[2]);
                ue.vx = parse_double(cur, tok[3]);
                ue.vy = parse_double(cur, tok[4]);
                sc.ues.push_back(ue);
            } else if (key == "event") {
                const auto tok = split_ws(value);
                if (tok.size() != 3) {
                    cur.fail("expected 'event = tick ue_id kind'");
                }
                ScheduledEvent ev;
                ev.tick = parse_int(cur, tok[0]);
                ev.ue_id = parse_i32(cur, tok[1]);
                ev.kind = event_kind_from(cur, tok[2]);
                sc.schedule.push_back(ev);
            } else if (key == "link_fault") {
                sc.link_faults.push_back(parse_i32(cur, value));
            } else {
                cur.fail("unknown key '" + key + "' in [schedule]");
            }
            break;
        }
        case Section::Sweep: {
            if (key == "trials") {
                scalar_once("sweep.trials");
                sc.trials = parse_i32(cur, value);
            } else if (key == "ue_distance") {
                scalar_once("sweep.ue_distance");
                sc.ue_distance = parse_double(cur, value);
            } else {
                cur.fail("unknown key '" + key + "' in [sweep]");
            }
            break;
        }
        }
    }

    if (sc.layout.custom && sc.layout.sites.empty()) {
        throw scenario_parse_error(
            layout_line, "line " + std::to_string(layout_line) +
                             ": custom layout without any 'fap' sites");
    }
    return sc;
}

std::string serialize_scenario(const Scenario& sc) {
    std::ostringstream out;
    out << "[radio]\n";
    for (const auto& [name, member] : radio_fields()) {
        out << name << " = " << fmt(sc.radio.*member) << "\n";
    }

    out << "\n[layout]\n";
    out << "kind = " << (sc.layout.custom ? "custom" : "default") << "\n";
    out << "cell_radius = " << fmt(sc.layout.cfg.cell_radius) << "\n";
    out << "fap_height = " << fmt(sc.layout.cfg.fap_height) << "\n";
    out << "macro_x = " << fmt(sc.layout.macro.x) << "\n";
    out << "macro_y = " << fmt(sc.layout.macro.y) << "\n";
    out << "macro_height = " << fmt(sc.layout.macro.z) << "\n";
    if (sc.layout.custom) {
        for (const FapSite& site : sc.layout.sites) {
            out << "fap = " << site.id << " " << fmt(site.pos.x) << " "
                << fmt(site.pos.y) << " " << site.tier << " " << site.walls
                << "\n";
        }
    } else {
        out << "tier1_count = " << sc.layout.cfg.tier1_count << "\n";
        out << "tier1_radius = " << fmt(sc.layout.cfg.tier1_radius) << "\n";
        out << "tier2_count = " << sc.layout.cfg.tier2_count << "\n";
        out << "tier2_radius = " << fmt(sc.layout.cfg.tier2_radius) << "\n";
    }

    out << "\n[schedule]\n";
    out << "mode = " << to_string(sc.mode) << "\n";
    out << "ticks = " << sc.ticks << "\n";
    out << "tick_seconds = " << fmt(sc.tick_seconds) << "\n";
    out << "seed = " << sc.seed << "\n";
    out << "wake_radius = " << fmt(sc.wake_radius) << "\n";
    for (const UeSpec& ue : sc.ues) {
        out << "ue = " << ue.id << " " << fmt(ue.x) << " " << fmt(ue.y) << " "
            << fmt(ue.vx) << " " << fmt(ue.vy) << "\n";
    }
    for (const ScheduledEvent& ev : sc.schedule) {
        out << "event = " << ev.tick << " " << ev.ue_id << " "
            << to_string(ev.kind) << "\n";
    }
    for (int32_t id : sc.link_faults) {
        out << "link_fault = " << id << "\n";
    }

    out << "\n[sweep]\n";
    out << "trials = " << sc.trials << "\n";
    out << "ue_distance = " << fmt(sc.ue_distance) << "\n";
    return out.str();
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw scenario_parse_error(0, path + ": cannot open scenario file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        Scenario sc = parse_scenario(buf.str());
        sc.validate();
        return sc;
    } catch (const scenario_parse_error& e) {
        throw scenario_parse_error(e.line(), path + ": " + e.what());
    } catch (const std::exception& e) {
        throw scenario_parse_error(0, path + ": " + e.what());
    }
}

}  // namespace femtosim
