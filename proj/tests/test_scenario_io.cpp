#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>

#include "femtosim/scenario_io.hpp"

using namespace femtosim;

namespace {

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

} // namespace

TEST_CASE("an empty file yields the default scenario") {
    CHECK(parse_scenario("") == Scenario{});
    CHECK(parse_scenario("\n  \n# only a comment\n") == Scenario{});
}

TEST_CASE("comments and whitespace are tolerated anywhere") {
    const Scenario sc = parse_scenario("# header comment\n"
                                       "  [radio]  \n"
                                       "f_ue = 900   # inline comment\n"
                                       "\n"
                                       "p0_fap=20\n");
    CHECK(sc.radio.f_ue == 900.0);
    CHECK(sc.radio.p0_fap == 20.0);
    CHECK(sc.radio.n_coeff == 30.0); // untouched default
}

TEST_CASE("every radio key maps onto its config field") {
    const Scenario sc = parse_scenario("[radio]\n"
                                       "f_ue = 2600\n"
                                       "n_coeff = 28\n"
                                       "p0_fap = 10\n"
                                       "p_macro = 2e6\n"
                                       "noise_power = 1e-6\n"
                                       "bandwidth_w = 2e7\n"
                                       "gamma_inner = 14\n"
                                       "gamma_outer = 9\n"
                                       "macro_coupling = 0.5\n"
                                       "beacon_duty = 0.1\n"
                                       "macro_distance = 250\n"
                                       "macro_wall_loss = 12\n");
    CHECK(sc.radio.f_ue == 2600.0);
    CHECK(sc.radio.n_coeff == 28.0);
    CHECK(sc.radio.p0_fap == 10.0);
    CHECK(sc.radio.p_macro == 2e6);
    CHECK(sc.radio.noise_power == 1e-6);
    CHECK(sc.radio.bandwidth_w == 2e7);
    CHECK(sc.radio.gamma_inner == 14.0);
    CHECK(sc.radio.gamma_outer == 9.0);
    CHECK(sc.radio.macro_coupling == 0.5);
    CHECK(sc.radio.beacon_duty == 0.1);
    CHECK(sc.radio.macro_distance == 250.0);
    CHECK(sc.radio.macro_wall_loss == 12.0);
}

TEST_CASE("parse errors name the key and the line") {
    CHECK_THROWS_WITH_AS(parse_scenario("[radio]\nbogus = 1\n"),
                         "line 2: unknown key 'bogus' in [radio]",
                         scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("[radio]\nf_ue = 1800\nf_ue = 900\n"),
                         "line 3: duplicate key 'f_ue'", scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("[radio]\nf_ue = abc\n"),
                         "line 2: bad number 'abc'", scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("f_ue = 1800\n"),
                         "line 1: key 'f_ue' outside any section",
                         scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("[nope]\n"),
                         "line 1: unknown section [nope]",
                         scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("[radio\n"),
                         "line 1: unterminated section header",
                         scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("[radio]\n[radio]\n"),
                         "line 2: section [radio] given twice",
                         scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("[radio]\njust words\n"),
                         "line 2: expected 'key = value'",
                         scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("[radio]\n = 5\n"),
                         "line 2: missing key before '='",
                         scenario_parse_error);

    try {
        parse_scenario("[radio]\nf_ue = abc\n");
        FAIL("expected a parse error");
    } catch (const scenario_parse_error& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("layout kind gates which keys are legal") {
    const Scenario custom = parse_scenario("[layout]\n"
                                           "kind = custom\n"
                                           "cell_radius = 12\n"
                                           "macro_x = 20\n"
                                           "macro_y = 300\n"
                                           "macro_height = 100\n"
                                           "fap = 1 0 0 0 0\n"
                                           "fap = 2 20 0 1 1\n");
    CHECK(custom.layout.custom);
    CHECK(custom.layout.cfg.cell_radius == 12.0);
    CHECK(custom.layout.macro == Position{20, 300, 100});
    REQUIRE(custom.layout.sites.size() == 2);
    CHECK(custom.layout.sites[0].id == 1);
    CHECK(custom.layout.sites[1].pos.x == 20.0);
    CHECK(custom.layout.sites[1].tier == 1);

    const Scenario dflt = parse_scenario("[layout]\n"
                                         "kind = default\n"
                                         "tier1_count = 6\n"
                                         "tier2_radius = 50\n");
    CHECK_FALSE(dflt.layout.custom);
    CHECK(dflt.layout.cfg.tier1_count == 6);
    CHECK(dflt.layout.cfg.tier2_radius == 50.0);

    CHECK_THROWS_WITH_AS(parse_scenario("[layout]\ncell_radius = 8\nkind = custom\n"),
                         "line 3: 'kind' must come before other layout keys",
                         scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("[layout]\nkind = weird\n"),
                         "line 2: layout kind must be 'default' or 'custom'",
                         scenario_parse_error);
    CHECK_THROWS_WITH_AS(
        parse_scenario("[layout]\nkind = custom\ntier1_count = 3\nfap = 1 0 0 0 0\n"),
        "line 3: 'tier1_count' applies to the default layout",
        scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("[layout]\nfap = 1 0 0 0 0\n"),
                         "line 2: 'fap' sites require kind = custom",
                         scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("[layout]\nkind = custom\nfap = 1 0 0\n"),
                         "line 3: expected 'fap = id x y tier walls'",
                         scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("[layout]\nkind = custom\n"),
                         "line 1: custom layout without any 'fap' sites",
                         scenario_parse_error);
}

TEST_CASE("schedule lines build ues, events and link faults") {
    const Scenario sc = parse_scenario("[schedule]\n"
                                       "mode = existing\n"
                                       "ticks = 100\n"
                                       "tick_seconds = 0.5\n"
                                       "seed = 42\n"
                                       "wake_radius = 15\n"
                                       "ue = 1 24 0 -4 0\n"
                                       "ue = 2 70 0 -4 0\n"
                                       "event = 1 1 power_on\n"
                                       "event = 3 1 call_start\n"
                                       "event = 70 1 call_end\n"
                                       "event = 80 1 power_off\n"
                                       "link_fault = 2\n");
    CHECK(sc.mode == BaselineMode::Existing);
    CHECK(sc.ticks == 100);
    CHECK(sc.tick_seconds == 0.5);
    CHECK(sc.seed == 42);
    CHECK(sc.wake_radius == 15.0);
    REQUIRE(sc.ues.size() == 2);
    CHECK(sc.ues[0] == UeSpec{1, 24, 0, -4, 0});
    REQUIRE(sc.schedule.size() == 4);
    CHECK(sc.schedule[0] == ScheduledEvent{1, 1, UeEventKind::PowerOn});
    CHECK(sc.schedule[1].kind == UeEventKind::CallStart);
    CHECK(sc.schedule[2].kind == UeEventKind::CallEnd);
    CHECK(sc.schedule[3].kind == UeEventKind::PowerOff);
    CHECK(sc.link_faults == std::vector<int32_t>{2});

    CHECK_THROWS_WITH_AS(parse_scenario("[schedule]\nmode = on\n"),
                         "line 2: mode must be 'proposed' or 'existing'",
                         scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("[schedule]\nevent = 1 1 explode\n"),
                         "line 2: unknown event kind 'explode'",
                         scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("[schedule]\nue = 1 0 0\n"),
                         "line 2: expected 'ue = id x y vx vy'",
                         scenario_parse_error);
    CHECK_THROWS_WITH_AS(parse_scenario("[schedule]\nseed = -3\n"),
                         "line 2: bad unsigned integer '-3'",
                         scenario_parse_error);
}

TEST_CASE("sweep keys set trials and the reference distance") {
    const Scenario sc =
        parse_scenario("[sweep]\ntrials = 1000\nue_distance = 7.5\n");
    CHECK(sc.trials == 1000);
    CHECK(sc.ue_distance == 7.5);
    CHECK_THROWS_WITH_AS(parse_scenario("[sweep]\npoints = 3\n"),
                         "line 2: unknown key 'points' in [sweep]",
                         scenario_parse_error);
}

TEST_CASE("serialization round-trips through the parser") {
    Scenario sc;
    sc.radio.f_ue = 2600.0;
    sc.radio.beacon_duty = 0.125;
    sc.radio.noise_power = 6.9882e-7;
    sc.layout.custom = true;
    sc.layout.cfg.cell_radius = 11.0;
    sc.layout.macro = Position{20, 300, 100};
    sc.layout.sites = {FapSite{1, {0, 0, 0}, 0, 0},
                       FapSite{2, {20, 0, 0}, 1, 1},
                       FapSite{3, {40.25, -1.5, 0}, 2, 2}};
    sc.mode = BaselineMode::Existing;
    sc.ticks = 100;
    sc.tick_seconds = 0.1;
    sc.seed = 7;
    sc.wake_radius = 12.5;
    sc.ues = {UeSpec{1, 24, 0, -4, 0}, UeSpec{2, 70, 0.5, -4, 0.25}};
    sc.schedule = {{1, 1, UeEventKind::PowerOn},
                   {3, 1, UeEventKind::CallStart},
                   {70, 1, UeEventKind::CallEnd}};
    sc.link_faults = {2};
    sc.trials = 500;
    sc.ue_distance = 5.0;

    CHECK(parse_scenario(serialize_scenario(sc)) == sc);

    const Scenario dflt;
    CHECK(parse_scenario(serialize_scenario(dflt)) == dflt);

    // serialization is stable: a second pass reproduces the same bytes
    const std::string once = serialize_scenario(sc);
    CHECK(serialize_scenario(parse_scenario(once)) == once);
}

TEST_CASE("doubles survive the round trip exactly") {
    Scenario sc;
    sc.radio.noise_power = 6.9882e-7;
    sc.radio.p_macro = 1.5e6;
    sc.tick_seconds = 0.1;
    sc.wake_radius = 12.000000000000002;
    const Scenario back = parse_scenario(serialize_scenario(sc));
    CHECK(back.radio.noise_power == sc.radio.noise_power);
    CHECK(back.tick_seconds == sc.tick_seconds);
    CHECK(back.wake_radius == sc.wake_radius);
}

TEST_CASE("loading runs full validation on top of parsing") {
    const auto good = write_temp("femtosim_ok.scn", "[schedule]\nticks = 10\n");
    const Scenario sc = load_scenario_file(good.string());
    CHECK(sc.ticks == 10);

    // threshold ordering is a semantic check, not a syntax one
    const auto bad_gamma =
        write_temp("femtosim_gamma.scn", "[radio]\ngamma_outer = 13\n");
    CHECK_THROWS_AS(load_scenario_file(bad_gamma.string()),
                    scenario_parse_error);
    try {
        load_scenario_file(bad_gamma.string());
        FAIL("expected a validation error");
    } catch (const scenario_parse_error& e) {
        CHECK(std::string(e.what()).find("femtosim_gamma.scn") !=
              std::string::npos);
    }

    const auto bad_syntax =
        write_temp("femtosim_syntax.scn", "[radio]\nf_ue = abc\n");
    try {
        load_scenario_file(bad_syntax.string());
        FAIL("expected a parse error");
    } catch (const scenario_parse_error& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        CHECK(std::string(e.what()).find("femtosim_syntax.scn") !=
              std::string::npos);
    }

    CHECK_THROWS_AS(load_scenario_file("/no/such/dir/missing.scn"),
                    scenario_parse_error);

    std::filesystem::remove(good);
    std::filesystem::remove(bad_gamma);
    std::filesystem::remove(bad_syntax);
}

TEST_CASE("a schedule that breaks the ue state machine fails to load") {
    const auto path = write_temp("femtosim_fsm.scn",
                                 "[schedule]\n"
                                 "ue = 1 5 0 0 0\n"
                                 "event = 3 1 call_start\n");
    try {
        load_scenario_file(path.string());
        FAIL("expected a validation error");
    } catch (const scenario_parse_error& e) {
        CHECK(std::string(e.what()).find("call_start while detached") !=
              std::string::npos);
    }
    std::filesystem::remove(path);
}
