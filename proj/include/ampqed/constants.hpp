#ifndef AMPQED_CONSTANTS_HPP
#define AMPQED_CONSTANTS_HPP

namespace ampqed {

/// Physical constants used throughout the engine. The default is the
/// natural-unit system c = eps0 = mu0 = hbar = 1, which keeps dense solves
/// well conditioned; SI values can be requested at the configuration
/// boundary.
struct Constants {
    double c = 1.0;    ///< speed of light
    double eps0 = 1.0; ///< vacuum permittivity
    double mu0 = 1.0;  ///< vacuum permeability
    double hbar = 1.0; ///< reduced Planck constant

    static Constants natural() { return Constants{}; }

    static Constants si() {
        Constants k;
        k.c = 2.99792458e8;
        k.eps0 = 8.8541878128e-12;
        k.mu0 = 1.25663706212e-6;
        k.hbar = 1.054571817e-34;
        return k;
    }
};

} // namespace ampqed

#endif
