#include "femtosim/radio.hpp"

#include <cmath>
#include <string>

namespace femtosim {

namespace {

void require(bool ok, const char* what) {
    if (!ok) {
        throw std::domain_error(what);
    }
}

} // namespace

void RadioConfig::validate() const {
    require(f_ue > 0, "radio: f_ue must be positive");
    require(n_coeff > 0, "radio: n_coeff must be positive");
    require(p0_fap > 0, "radio: p0_fap must be positive");
    require(p_macro > 0, "radio: p_macro must be positive");
    require(noise_power > 0, "radio: noise_power must be positive");
    require(bandwidth_w > 0, "radio: bandwidth_w must be positive");
    require(macro_coupling >= 0 && macro_coupling <= 1,
            "radio: macro_coupling must lie in [0,1]");
    require(beacon_duty >= 0 && beacon_duty <= 1,
            "radio: beacon_duty must lie in [0,1]");
    require(macro_distance > 0, "radio: macro_distance must be positive");
    require(gamma_outer < gamma_inner,
            "radio: gamma_outer must be below gamma_inner");
}

double path_loss_reference(double f_mhz, double d_m, double n_coeff) {
    require(f_mhz > 0, "path loss: frequency must be positive");
    require(d_m > 0, "path loss: distance must be positive");
    require(n_coeff > 0, "path loss: coefficient must be positive");
    return 20.0 * std::log10(f_mhz) + n_coeff * std::log10(d_m) - 28.0;
}

double path_loss_neighbor(double f_mhz, double d_m, double n_coeff, int walls) {
    require(walls >= 0, "path loss: wall count must be non-negative");
    return path_loss_reference(f_mhz, d_m, n_coeff) +
           4.0 * static_cast<double>(walls) * static_cast<double>(walls);
}

double received_power(double p0_mw, double loss_db) {
    require(p0_mw > 0, "received power: source power must be positive");
    return p0_mw * std::pow(10.0, -loss_db / 10.0);
}

double snir_linear(double rx_power_mw, const InterferenceBreakdown& intf,
                   double noise_mw) {
    require(noise_mw > 0, "snir: noise must be positive");
    require(rx_power_mw >= 0, "snir: signal must be non-negative");
    return rx_power_mw / (intf.total_mw() + noise_mw);
}

double capacity(double bandwidth_hz, double snir) {
    require(bandwidth_hz > 0, "capacity: bandwidth must be positive");
    require(snir >= 0, "capacity: snir must be non-negative");
    return bandwidth_hz * std::log2(1.0 + snir);
}

double db_from_linear(double ratio) {
    require(ratio > 0, "db_from_linear: ratio must be positive");
    return 10.0 * std::log10(ratio);
}

double linear_from_db(double db) {
    return std::pow(10.0, db / 10.0);
}

double free_space_loss_db(double d_m, double f_mhz) {
    require(d_m > 0, "free-space loss: distance must be positive");
    require(f_mhz > 0, "free-space loss: frequency must be positive");
    return 32.44 + 20.0 * std::log10(d_m / 1000.0) + 20.0 * std::log10(f_mhz);
}

double macro_interference(const RadioConfig& cfg) {
    cfg.validate();
    if (cfg.macro_coupling == 0.0) {
        return 0.0;
    }
    const double loss_db =
        free_space_loss_db(cfg.macro_distance, cfg.f_ue) + cfg.macro_wall_loss;
    return cfg.macro_coupling * cfg.p_macro * std::pow(10.0, -loss_db / 10.0);
}

} // namespace femtosim
