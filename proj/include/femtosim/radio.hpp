#pragma once

#include <stdexcept>

namespace femtosim {

// Shortest link distance fed into a path-loss formula. Collocated nodes
// would otherwise produce infinite received power.
inline constexpr double kMinLinkDistance = 1e-3;

// Radio parameters for one experiment. All powers are linear mW, all
// thresholds dB. Table-oriented defaults: 1800 MHz carrier, 15 mW FAP,
// 1.5 kW macro BS, -61.6 dBm noise floor.
struct RadioConfig {
    double f_ue = 1800.0;           // carrier frequency, MHz
    double n_coeff = 30.0;          // distance power-loss coefficient
    double p0_fap = 15.0;           // FAP transmit power, mW
    double p_macro = 1.5e6;         // macro BS transmit power, mW
    double noise_power = 6.9882e-7; // total received noise, mW
    double bandwidth_w = 1.0e7;     // Shannon bandwidth, Hz
    double gamma_inner = 12.55;     // SNIR threshold at cell inner boundary, dB
    double gamma_outer = 8.21;      // SNIR threshold at cell outer boundary, dB
    double macro_coupling = 0.0;    // cross-band coupling factor, [0,1]
    double beacon_duty = 0.0;       // idle-FAP mean emission fraction, [0,1]
    double macro_distance = 300.0;  // macro antenna to indoor UE plane, m
    double macro_wall_loss = 10.0;  // outdoor-to-indoor penetration loss, dB

    // Throws std::domain_error on the first violated constraint.
    void validate() const;

    bool operator==(const RadioConfig&) const = default;
};

struct LinkBudget {
    double path_loss_db = 0.0;
    double rx_power_mw = 0.0;
};

// Interference seen by one receiver, split by source class.
struct InterferenceBreakdown {
    double i_active_mw = 0.0; // sum over active (full-power) neighbor FAPs
    double i_idle_mw = 0.0;   // duty-scaled beacon emission of idle neighbors
    double i_macro_mw = 0.0;  // coupling-scaled macro contribution

    double total_mw() const { return i_active_mw + i_idle_mw + i_macro_mw; }
};

// Indoor path loss toward the serving cell: 20log10(f) + n*log10(d) - 28.
double path_loss_reference(double f_mhz, double d_m, double n_coeff);

// Indoor path loss from a neighbor cell, adding the 4*walls^2 dB wall
// penalty to the serving-cell formula.
double path_loss_neighbor(double f_mhz, double d_m, double n_coeff, int walls);

// p0 * 10^(-loss/10), mW.
double received_power(double p0_mw, double loss_db);

// Linear SNIR; the denominator is interference total plus noise.
double snir_linear(double rx_power_mw, const InterferenceBreakdown& intf,
                   double noise_mw);

// Shannon capacity W*log2(1+snir), bit/s.
double capacity(double bandwidth_hz, double snir);

double db_from_linear(double ratio);
double linear_from_db(double db);

// Free-space loss 32.44 + 20log10(d_km) + 20log10(f_MHz), dB. Distance in m.
double free_space_loss_db(double d_m, double f_mhz);

// Ambient macro interference on the femto band:
// coupling * p_macro attenuated by free-space loss over cfg.macro_distance
// plus the configured wall penetration. Zero when coupling is zero.
double macro_interference(const RadioConfig& cfg);

} // namespace femtosim
