#include "qls/params.hpp"

#include "qls/digest.hpp"

namespace qls {

std::string PhysicalParams::canonical() const {
    return "rabi_hz=" + format_double(rabi_hz) + ";eta=" + format_double(lamb_dicke) +
           ";tau_d=" + format_double(decay_time) + ";tau_h=" + format_double(heating_time) +
           ";n_fock=" + std::to_string(fock_cutoff) + ";r=" + format_double(squeezing_r);
}

}  // namespace qls
