#pragma once

#include <cstdint>
#include <vector>

namespace femtosim {

// UE terminals and FAP cell centers share one radio plane at this height;
// only the macro BS sits above it.
inline constexpr double kUePlaneHeight = 1.5;

struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const Position&) const = default;
};

// Euclidean 3D distance, m.
double distance(const Position& a, const Position& b);

struct FapSite {
    int32_t id = 0;
    Position pos;
    int tier = 0;  // 0 = reference
    int walls = 0; // walls between this FAP and the reference coverage area
    double radius_m = 10.0;

    bool operator==(const FapSite&) const = default;
};

struct Layout {
    FapSite reference;
    std::vector<FapSite> neighbors;
    Position macro_pos{300.0, 0.0, 100.0};
    double fap_height_m = 2.0;

    // Throws std::domain_error: duplicate ids, tier/wall mismatch for
    // tiers 1-2, or a neighbor closer than the 20 m center spacing.
    void validate() const;

    const FapSite* find(int32_t fap_id) const;

    bool operator==(const Layout&) const = default;
};

// Knobs for the generated two-ring arrangement.
struct LayoutConfig {
    int tier1_count = 12;
    double tier1_radius = 20.0;
    int tier2_count = 18;
    double tier2_radius = 40.0;
    double cell_radius = 10.0;
    double fap_height = 2.0;
    double macro_horizontal = 300.0;
    double macro_height = 100.0;

    bool operator==(const LayoutConfig&) const = default;
};

// Reference FAP at the plane origin, a tier-1 ring (walls=1) and a tier-2
// ring (walls=2) of evenly spaced neighbors ordered by (tier, angle), and
// the macro BS on the +x axis at the configured horizontal distance.
// Deterministic: equal configs yield identical layouts.
Layout generate_default_layout(const LayoutConfig& cfg = {});

// Position on the +x axis at distance d_m from the reference FAP center,
// on the UE plane. Throws std::domain_error unless 0 < d_m <= radius.
Position place_reference_ue(const Layout& layout, double d_m);

} // namespace femtosim
