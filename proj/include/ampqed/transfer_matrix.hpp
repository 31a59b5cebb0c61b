#ifndef AMPQED_TRANSFER_MATRIX_HPP
#define AMPQED_TRANSFER_MATRIX_HPP

#include <complex>
#include <optional>

#include <Eigen/Core>

#include "ampqed/constants.hpp"
#include "ampqed/media.hpp"

namespace ampqed {

/// Plane-wave transfer matrices for stratified local media at normal
/// incidence. Fields in each homogeneous segment are a e^{ikz} + b e^{-ikz}
/// with k = n(w) w / c; a 2x2 matrix maps the local (a, b) amplitudes from
/// one plane to another. This is a continuum route, fully independent of the
/// gridded Maxwell operator, and is what the pole scan reports round-trip
/// gain with.

/// Transfer matrix from `z_from` to `z_to` (left to right), starting in a
/// medium of permittivity `eps_start` at the left plane. Interfaces at layer
/// edges and propagation inside segments are accumulated in order.
Eigen::Matrix2cd transfer_matrix(const MediumModel& model, double z_from, double z_to,
                                 std::complex<double> omega, const Constants& k,
                                 std::complex<double> eps_start = 1.0);

/// Outgoing-wave condition for the whole window [z_lo, z_hi]: the (1,1)
/// entry of the window transfer matrix. Zeros of this function in the
/// complex frequency plane are poles of the scattering response; a zero in
/// the upper half-plane marks a self-oscillating (lasing) configuration.
std::complex<double> outgoing_mode_condition(const MediumModel& model, double z_lo,
                                             double z_hi, std::complex<double> omega,
                                             const Constants& k);

/// Round-trip amplitude factor seen from a vacuum reference plane:
/// (reflection of everything to the left) x (reflection of everything to the
/// right). |round trip| >= 1 at a phase-matched frequency is the lasing
/// threshold condition; the outgoing mode condition vanishes exactly where
/// the round trip equals one.
std::complex<double> round_trip_gain(const MediumModel& model, double z_lo, double z_hi,
                                     double plane, std::complex<double> omega,
                                     const Constants& k);

/// Newton search for a zero of the outgoing mode condition near `guess`.
std::optional<std::complex<double>> find_response_pole(const MediumModel& model, double z_lo,
                                                       double z_hi,
                                                       std::complex<double> guess,
                                                       const Constants& k,
                                                       int max_iter = 60);

/// Copy of the model with every inverted-oscillator strength (f < 0)
/// multiplied by `factor`; absorbing oscillators are untouched.
MediumModel scale_gain(const MediumModel& model, double factor);

struct LasingThreshold {
    bool found = false;
    double scale = 0.0; ///< gain multiplier at which the pole crosses the real axis
    double omega = 0.0; ///< lasing frequency at threshold
};

/// Threshold pump multiplier for a cavity model: bisects the gain scale
/// until the tracked response pole sits on the real axis. The initial pole
/// guess is taken from the deepest minimum of |mode condition| over real
/// frequencies in [band_lo, band_hi].
LasingThreshold lasing_threshold(const MediumModel& model, double z_lo, double z_hi,
                                 double band_lo, double band_hi, const Constants& k);

/// Complex response pole of the model at its current pump level, tracked
/// from the real-frequency band like lasing_threshold.
std::optional<std::complex<double>> track_response_pole(const MediumModel& model, double z_lo,
                                                        double z_hi, double band_lo,
                                                        double band_hi, const Constants& k);

} // namespace ampqed

#endif
