#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ampqed/errors.hpp"
#include "ampqed/green.hpp"
#include "ampqed/quantization.hpp"
#include "support.hpp"

using namespace ampqed;
using cplx = std::complex<double>;

namespace {

const Constants kNat = Constants::natural();
constexpr double pi = 3.14159265358979323846;

Kernel diagonal_kernel(const std::shared_ptr<const SpatialGrid>& grid,
                       const std::vector<double>& values, double omega = 1.0) {
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(grid->size(), grid->size());
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(values.size()); ++i)
        v(i, i) = values[static_cast<std::size_t>(i)] / grid->weight(i);
    return Kernel(grid, omega, std::move(v));
}

SpectralDecomposition slab_sigma(const MediumModel& m, double w, int nodes = 48) {
    auto grid = SpatialGrid::uniform(0.35, 0.65, nodes);
    const Kernel q = build_kernel(m, grid, w, kNat);
    return spectral_decompose(hermitian_split(q).first);
}

} // namespace

TEST_CASE("absorbing spectra have no creation channels") {
    const ChannelPartition part = partition_channels(slab_sigma(testing::absorbing_slab(), 6.0));
    CHECK(part.minus.empty());
    CHECK(part.dropped.empty());
    CHECK_FALSE(part.plus.empty());
    for (const Channel& ch : part.plus)
        CHECK(ch.amplitude == doctest::Approx(std::sqrt(ch.sigma)));
}

TEST_CASE("gain channels appear exactly on the inverted layer's support") {
    // adjacent absorbing and gain layers, local response: eigenvectors are
    // node-localized, so creation channels live only on the gain nodes
    MediumModel m;
    Layer absorbing;
    absorbing.name = "absorbing";
    absorbing.z_min = 0.0;
    absorbing.z_max = 0.5;
    absorbing.oscillators.push_back({1.0, 6.0, 0.3, 2.0});
    Layer gain;
    gain.name = "gain";
    gain.z_min = 0.5;
    gain.z_max = 1.0;
    gain.oscillators.push_back({-0.5, 6.0, 0.3, 2.0});
    m.layers = {absorbing, gain};

    auto grid = SpatialGrid::uniform(0.0, 1.0, 40);
    const Kernel q = build_kernel(m, grid, 6.0, kNat);
    const SpectralDecomposition spec = spectral_decompose(hermitian_split(q).first);
    const ChannelPartition part = partition_channels(spec);
    CHECK_FALSE(part.minus.empty());
    CHECK_FALSE(part.plus.empty());
    for (const Channel& ch : part.minus) {
        Eigen::Index peak = 0;
        ch.vector.cwiseAbs().maxCoeff(&peak);
        CHECK(grid->node(peak) > 0.5); // strictly inside the gain layer
    }
}

TEST_CASE("a plus-minus spectrum splits one channel into each sector") {
    auto grid = SpatialGrid::uniform(0.0, 1.0, 2);
    const ChannelPartition part =
        partition_channels(spectral_decompose(diagonal_kernel(grid, {1.0, -1.0})));
    CHECK(part.plus.size() == 1);
    CHECK(part.minus.size() == 1);
}

TEST_CASE("partition requires a positive frequency label") {
    auto grid = SpatialGrid::uniform(0.0, 1.0, 4);
    const Kernel sigma = diagonal_kernel(grid, {1.0, 2.0, 3.0, 4.0}, -2.0);
    CHECK_THROWS_AS((void)partition_channels(spectral_decompose(sigma)), ConfigError);
}

TEST_CASE("partition completeness across random spectra") {
    auto grid = SpatialGrid::uniform(0.0, 1.0, 20);
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        const SpectralDecomposition spec =
            spectral_decompose(testing::random_hermitian(rng, grid));
        const ChannelPartition part = partition_channels(spec);
        CHECK(part.total() == spec.count());
        CHECK(part.omega > 0.0);
    }
}

TEST_CASE("covariance identities on random spectra") {
    auto grid = SpatialGrid::uniform(0.0, 1.0, 16);
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 40; ++trial) {
        const Kernel sigma = testing::random_hermitian(rng, grid, 2.5);
        const SpectralDecomposition spec = spectral_decompose(sigma);
        const ChannelPartition part = partition_channels(spec);
        const NoiseCovariances cov = noise_covariances(part, kNat);
        const double scale = kNat.hbar * part.omega / pi;
        const Kernel sav = sigma_av(spec);
        CHECK(((cov.anti_normal + cov.normal) - sav.scaled(scale)).norm() /
                  (scale * sav.norm()) <
              1e-11);
        CHECK(((cov.anti_normal - cov.normal) - sigma.scaled(scale)).norm() /
                  (scale * sigma.norm()) <
              1e-11);
    }
}

TEST_CASE("absorbing media have zero normally-ordered covariance") {
    const SpectralDecomposition spec = slab_sigma(testing::absorbing_slab(), 6.0);
    const NoiseCovariances cov = noise_covariances(partition_channels(spec), kNat);
    CHECK(cov.normal.norm() == 0.0);
    const double scale = kNat.hbar * spec.omega / pi;
    const Kernel sigma = spec.reconstruct();
    CHECK((cov.anti_normal - sigma.scaled(scale)).norm() / (scale * sigma.norm()) < 1e-11);
}

TEST_CASE("fully inverted media have zero anti-normal covariance") {
    const SpectralDecomposition spec = slab_sigma(testing::gain_slab(-1.0), 6.0);
    CHECK(spec.eigenvalues.maxCoeff() < 0.0);
    const NoiseCovariances cov = noise_covariances(partition_channels(spec), kNat);
    CHECK(cov.anti_normal.norm() == 0.0);
    const double scale = kNat.hbar * spec.omega / pi;
    const Kernel sav = sigma_av(spec);
    CHECK((cov.normal - sav.scaled(scale)).norm() / (scale * sav.norm()) < 1e-11);
}

TEST_CASE("noise commutator kernel equals the sign-indefinite sigma") {
    auto grid = SpatialGrid::uniform(0.0, 1.0, 14);
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 30; ++trial) {
        const Kernel sigma = testing::random_hermitian(rng, grid, 1.7);
        const ChannelPartition part = partition_channels(spectral_decompose(sigma));
        const double scale = kNat.hbar * part.omega / pi;
        CHECK((commutator_kernel(part, kNat) - sigma.scaled(scale)).norm() /
                  (scale * sigma.norm()) <
              1e-11);
    }

    const Kernel absorbing = commutator_kernel(
        partition_channels(slab_sigma(testing::absorbing_slab(), 6.0)), kNat);
    CHECK(negativity(absorbing) == 0.0);
    const Kernel inverted = commutator_kernel(
        partition_channels(slab_sigma(testing::gain_slab(-1.0), 6.0)), kNat);
    CHECK(negativity(inverted.scaled(-1.0)) == 0.0);
}

TEST_CASE("equal-frequency commutator of local media is the node-sign diagonal") {
    // absorbing-only: identity kernel
    const SpectralDecomposition abs_spec = slab_sigma(testing::absorbing_slab(), 6.0);
    const Kernel id = Kernel::identity(abs_spec.grid, abs_spec.omega);
    CHECK((equal_frequency_commutator(abs_spec) - id).norm() / id.norm() < 1e-11);

    // adjacent absorbing/gain stack: -1 on gain nodes, +1 elsewhere
    MediumModel m;
    Layer a;
    a.name = "a";
    a.z_min = 0.0;
    a.z_max = 0.5;
    a.oscillators.push_back({1.0, 6.0, 0.3, 2.0});
    Layer g;
    g.name = "g";
    g.z_min = 0.5;
    g.z_max = 1.0;
    g.oscillators.push_back({-0.5, 6.0, 0.3, 2.0});
    m.layers = {a, g};
    auto grid = SpatialGrid::uniform(0.0, 1.0, 32);
    const Kernel q = build_kernel(m, grid, 6.0, kNat);
    const SpectralDecomposition spec = spectral_decompose(hermitian_split(q).first);
    const Kernel p = equal_frequency_commutator(spec);
    for (Eigen::Index i = 0; i < grid->size(); ++i) {
        const double expected = (grid->node(i) > 0.5 ? -1.0 : 1.0) / grid->weight(i);
        CHECK(p.values()(i, i).real() == doctest::Approx(expected).epsilon(1e-10));
        for (Eigen::Index j = 0; j < grid->size(); ++j)
            if (i != j) CHECK(std::abs(p.values()(i, j)) < 1e-10 / grid->weight(i));
    }
}

TEST_CASE("equal-frequency commutator squares to the identity for nonlocal media") {
    // adjacent nonlocal layers of opposite sign; the smearing length is kept
    // near the grid spacing so no channel falls into the cutoff
    MediumModel m;
    Layer a;
    a.name = "a";
    a.z_min = 0.35;
    a.z_max = 0.5;
    a.nonlocal_length = 0.008;
    a.oscillators.push_back({1.0, 6.0, 0.3, 2.0});
    Layer g = a;
    g.name = "g";
    g.z_min = 0.5;
    g.z_max = 0.65;
    g.oscillators[0].strength = -0.5;
    m.layers = {a, g};

    auto grid = SpatialGrid::uniform(0.35, 0.65, 40);
    const Kernel q = build_kernel(m, grid, 6.0, kNat);
    const SpectralDecomposition spec = spectral_decompose(hermitian_split(q).first);
    const Kernel p = equal_frequency_commutator(spec);
    const Kernel id = Kernel::identity(grid, spec.omega);
    CHECK((p.compose(p) - id).norm() / id.norm() < 1e-10);
    CHECK((p - id).norm() / id.norm() > 0.1); // genuinely sign-indefinite input
}

TEST_CASE("hamiltonian sign spectrum and the ground-state flag") {
    const HamiltonianSpectrum absorbing =
        hamiltonian_spectrum(slab_sigma(testing::absorbing_slab(), 6.0));
    CHECK_FALSE(absorbing.unbounded_below);
    CHECK(absorbing.signs.minCoeff() == 1);

    const HamiltonianSpectrum gain = hamiltonian_spectrum(slab_sigma(testing::gain_slab(), 6.0));
    CHECK(gain.unbounded_below);

    auto grid = SpatialGrid::uniform(0.0, 1.0, 3);
    const HamiltonianSpectrum mixed =
        hamiltonian_spectrum(spectral_decompose(diagonal_kernel(grid, {2.0, -3.0, 1.0})));
    REQUIRE(mixed.signs.size() == 3);
    int plus = 0, minus = 0;
    for (Eigen::Index i = 0; i < 3; ++i) (mixed.signs[i] > 0 ? plus : minus)++;
    CHECK(plus == 2);
    CHECK(minus == 1);
    CHECK(mixed.unbounded_below);
}

TEST_CASE("local amplitudes match the pointwise conductivity") {
    // strictly local medium: channel amplitudes are |sigma(z_i)|^(1/2) and the
    // noise-current amplitude carries the (hbar w / pi)^(1/2) prefactor
    const MediumModel m = testing::gain_slab(-0.4);
    auto grid = SpatialGrid::uniform(0.35, 0.65, 24);
    const double w = 6.0;
    const Kernel q = build_kernel(m, grid, w, kNat);
    const SpectralDecomposition spec = spectral_decompose(hermitian_split(q).first);
    const ChannelPartition part = partition_channels(spec);
    REQUIRE(part.plus.size() + part.minus.size() == static_cast<std::size_t>(grid->size()));

    auto probe = [&](const Channel& ch) {
        Eigen::Index peak = 0;
        ch.vector.cwiseAbs().maxCoeff(&peak);
        const double local_sigma =
            kNat.eps0 * w * permittivity(m, grid->node(peak), cplx(w, 0.0)).imag();
        CHECK(std::sqrt(kNat.hbar * w / pi) * ch.amplitude ==
              doctest::Approx(std::sqrt(kNat.hbar * w / pi) * std::sqrt(std::abs(local_sigma)))
                  .epsilon(1e-10));
    };
    for (const Channel& ch : part.plus) probe(ch);
    for (const Channel& ch : part.minus) probe(ch);
}
