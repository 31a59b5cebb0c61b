#include "ampqed/transfer_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ampqed/errors.hpp"

namespace ampqed {

using cplx = std::complex<double>;

namespace {

cplx wavenumber(const MediumModel& model, double z, cplx omega, const Constants& k) {
    return std::sqrt(permittivity(model, z, omega)) * omega / k.c;
}

Eigen::Matrix2cd interface_matrix(cplx k_from, cplx k_to) {
    const cplx r = k_from / k_to;
    Eigen::Matrix2cd m;
    m << 0.5 * (1.0 + r), 0.5 * (1.0 - r), 0.5 * (1.0 - r), 0.5 * (1.0 + r);
    return m;
}

Eigen::Matrix2cd propagation_matrix(cplx kseg, double d) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::exp(cplx(0.0, 1.0) * kseg * d);
    m(1, 1) = std::exp(-cplx(0.0, 1.0) * kseg * d);
    return m;
}

} // namespace

Eigen::Matrix2cd transfer_matrix(const MediumModel& model, double z_from, double z_to,
                                 cplx omega, const Constants& k, cplx eps_start) {
    if (!(z_to > z_from)) throw ConfigError("transfer matrix needs z_to > z_from");

    std::vector<double> cuts{z_from, z_to};
    for (const Layer& l : model.layers) {
        if (l.z_min > z_from && l.z_min < z_to) cuts.push_back(l.z_min);
        if (l.z_max > z_from && l.z_max < z_to) cuts.push_back(l.z_max);
    }
    std::sort(cuts.begin(), cuts.end());

    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    cplx k_cur = std::sqrt(eps_start) * omega / k.c;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double mid = 0.5 * (cuts[s] + cuts[s + 1]);
        const cplx k_seg = wavenumber(model, mid, omega, k);
        if (std::abs(k_seg - k_cur) > 0.0) {
            m = interface_matrix(k_cur, k_seg) * m;
            k_cur = k_seg;
        }
        m = propagation_matrix(k_seg, cuts[s + 1] - cuts[s]) * m;
    }
    return m;
}

cplx outgoing_mode_condition(const MediumModel& model, double z_lo, double z_hi, cplx omega,
                             const Constants& k) {
    return transfer_matrix(model, z_lo, z_hi, omega, k)(1, 1);
}

cplx round_trip_gain(const MediumModel& model, double z_lo, double z_hi, double plane,
                     cplx omega, const Constants& k) {
    if (!(plane > z_lo && plane < z_hi))
        throw ConfigError("round-trip reference plane must lie inside the window");
    const Eigen::Matrix2cd left = transfer_matrix(model, z_lo, plane, omega, k);
    const Eigen::Matrix2cd right = transfer_matrix(model, plane, z_hi, omega, k);
    // reflection of the left stack for a left-going wave, and of the right
    // stack for a right-going wave, both referenced in vacuum at the plane
    const cplx r_left = left(0, 1) / left(1, 1);
    const cplx r_right = -right(1, 0) / right(1, 1);
    return r_left * r_right;
}

std::optional<cplx> find_response_pole(const MediumModel& model, double z_lo, double z_hi,
                                       cplx guess, const Constants& k, int max_iter) {
    cplx w = guess;
    for (int it = 0; it < max_iter; ++it) {
        const double step = 1e-7 * std::max(std::abs(w), 1.0);
        const cplx f = outgoing_mode_condition(model, z_lo, z_hi, w, k);
        const cplx fp = (outgoing_mode_condition(model, z_lo, z_hi, w + step, k) -
                         outgoing_mode_condition(model, z_lo, z_hi, w - step, k)) /
                        (2.0 * step);
        if (std::abs(fp) == 0.0) return std::nullopt;
        const cplx dw = f / fp;
        w -= dw;
        if (!(std::abs(w) < 1e12) || std::isnan(std::abs(w))) return std::nullopt;
        if (std::abs(dw) < 1e-12 * std::abs(w)) return w;
    }
    return std::nullopt;
}

MediumModel scale_gain(const MediumModel& model, double factor) {
    MediumModel out = model;
    for (Layer& l : out.layers)
        for (Oscillator& o : l.oscillators)
            if (o.strength < 0.0) o.strength *= factor;
    return out;
}

std::optional<cplx> track_response_pole(const MediumModel& model, double z_lo, double z_hi,
                                        double band_lo, double band_hi, const Constants& k) {
    // deepest |mode condition| minimum over the real band seeds the Newton run
    const int samples = 600;
    double best_w = band_lo;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= samples; ++i) {
        const double w = band_lo + (band_hi - band_lo) * i / samples;
        const double v = std::abs(outgoing_mode_condition(model, z_lo, z_hi, cplx(w, 0.0), k));
        if (v < best) {
            best = v;
            best_w = w;
        }
    }
    return find_response_pole(model, z_lo, z_hi, cplx(best_w, 0.0), k);
}

LasingThreshold lasing_threshold(const MediumModel& model, double z_lo, double z_hi,
                                 double band_lo, double band_hi, const Constants& k) {
    LasingThreshold out;
    auto pole_im = [&](double scale) -> std::optional<cplx> {
        return track_response_pole(scale_gain(model, scale), z_lo, z_hi, band_lo, band_hi, k);
    };

    double lo = 0.05, hi = 1.0;
    auto p_hi = pole_im(hi);
    int growth = 0;
    while ((!p_hi || p_hi->imag() <= 0.0) && growth++ < 10) {
        hi *= 2.0;
        p_hi = pole_im(hi);
    }
    if (!p_hi || p_hi->imag() <= 0.0) return out;
    auto p_lo = pole_im(lo);
    if (!p_lo || p_lo->imag() >= 0.0) return out;

    cplx pole = *p_hi;
    for (int it = 0; it < 60 && (hi - lo) > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto p = pole_im(mid);
        if (!p) return out;
        if (p->imag() > 0.0) {
            hi = mid;
            pole = *p;
        } else {
            lo = mid;
        }
    }
    out.found = true;
    out.scale = 0.5 * (lo + hi);
    out.omega = pole.real();
    return out;
}

} // namespace ampqed
