#include "femtosim/topology.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

namespace femtosim {

double distance(const Position& a, const Position& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void Layout::validate() const {
    std::set<int32_t> ids{reference.id};
    if (reference.tier != 0 || reference.walls != 0) {
        throw std::domain_error("layout: reference FAP must have tier 0, walls 0");
    }
    if (reference.radius_m <= 0) {
        throw std::domain_error("layout: cell radius must be positive");
    }
    for (const FapSite& site : neighbors) {
        if (!ids.insert(site.id).second) {
            throw std::domain_error("layout: duplicate FAP id " +
                                    std::to_string(site.id));
        }
        if (site.tier <= 0) {
            throw std::domain_error("layout: neighbor FAP " +
                                    std::to_string(site.id) +
                                    " must have tier >= 1");
        }
        if ((site.tier == 1 && site.walls != 1) ||
            (site.tier == 2 && site.walls != 2)) {
            throw std::domain_error("layout: tier " + std::to_string(site.tier) +
                                    " FAP " + std::to_string(site.id) +
                                    " must have walls = tier");
        }
        if (site.walls < 0 || site.radius_m <= 0) {
            throw std::domain_error("layout: invalid walls or radius on FAP " +
                                    std::to_string(site.id));
        }
        if (distance(site.pos, reference.pos) < 20.0 - 1e-9) {
            throw std::domain_error("layout: FAP " + std::to_string(site.id) +
                                    " closer than 20 m center spacing");
        }
    }
}

const FapSite* Layout::find(int32_t fap_id) const {
    if (reference.id == fap_id) {
        return &reference;
    }
    for (const FapSite& site : neighbors) {
        if (site.id == fap_id) {
            return &site;
        }
    }
    return nullptr;
}

Layout generate_default_layout(const LayoutConfig& cfg) {
    if (cfg.tier1_count < 0 || cfg.tier2_count < 0) {
        throw std::domain_error("layout: ring counts must be non-negative");
    }
    if (cfg.tier1_radius < 20.0 || cfg.tier2_radius < 20.0) {
        throw std::domain_error("layout: ring radii must honor 20 m spacing");
    }

    Layout layout;
    layout.reference = FapSite{0, {0.0, 0.0, kUePlaneHeight}, 0, 0, cfg.cell_radius};
    layout.fap_height_m = cfg.fap_height;
    layout.macro_pos = Position{cfg.macro_horizontal, 0.0, cfg.macro_height};

    int32_t next_id = 1;
    auto add_ring = [&](int count, double radius, int tier) {
        for (int i = 0; i < count; ++i) {
            const double angle = 2.0 * std::numbers::pi * i / count;
            layout.neighbors.push_back(
                FapSite{next_id++,
                        {radius * std::cos(angle), radius * std::sin(angle),
                         kUePlaneHeight},
                        tier, tier, cfg.cell_radius});
        }
    };
    add_ring(cfg.tier1_count, cfg.tier1_radius, 1);
    add_ring(cfg.tier2_count, cfg.tier2_radius, 2);

    layout.validate();
    return layout;
}

Position place_reference_ue(const Layout& layout, double d_m) {
    if (d_m <= 0) {
        throw std::domain_error("reference UE distance must be positive");
    }
    if (d_m > layout.reference.radius_m) {
        throw std::domain_error("reference UE distance exceeds cell radius");
    }
    return Position{layout.reference.pos.x + d_m, layout.reference.pos.y,
                    kUePlaneHeight};
}

} // namespace femtosim
