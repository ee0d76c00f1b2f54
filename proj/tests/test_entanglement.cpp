#include <cmath>
#include <random>

#include "doctest.h"

#include "aqw/entanglement.hpp"
#include "oracles/schmidt.hpp"
#include "test_support.hpp"

using namespace aqw;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

WalkerState ghz() {
    return WalkerState::from_amplitudes(1, {{{0, 0, 0}, kInvSqrt2}, {{1, 1, 1}, kInvSqrt2}});
}

}  // namespace

TEST_CASE("to_density") {
    SUBCASE("basis ket") {
        const auto s = WalkerState::from_amplitudes(2, {{{0, 0, 0}, 1.0}});
        const auto rho = to_density(s, SupportBasis::box(0, 0, 0, 0));
        CHECK(rho.dim() == 2);
        CHECK(std::abs(rho.data()(0, 0) - 1.0) <= 1e-15);
        CHECK(std::abs(rho.data()(1, 1)) <= 1e-15);
    }
    SUBCASE("coin superposition at the origin") {
        const auto s = initial_state(0, 0, testing::minus_coin(), 1);
        const auto rho = to_density(s, SupportBasis::box(0, 0, 0, 0));
        CHECK(std::abs(rho.data()(0, 1) + 0.5) <= 1e-15);
        CHECK(std::abs(rho.data()(1, 0) + 0.5) <= 1e-15);
        CHECK(std::abs(rho.data()(0, 0) - 0.5) <= 1e-15);
    }
    SUBCASE("support too small") {
        const auto s = WalkerState::from_amplitudes(2, {{{1, 0, 0}, 1.0}});
        CHECK_THROWS_AS((void)to_density(s, SupportBasis::box(0, 0, 0, 0)), SupportTooSmall);
    }
    SUBCASE("light cone box") {
        const auto b = SupportBasis::light_cone(2, 1, -1);
        CHECK(b.xs.front() == -1);
        CHECK(b.xs.back() == 3);
        CHECK(b.ys.front() == -3);
        CHECK(b.ys.size() == 5);
    }
}

TEST_CASE("density matrix validation") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix({Subsystem::Coin}, {2}, m), NumericalInstability);
    m *= 0.5;
    CHECK_NOTHROW(DensityMatrix({Subsystem::Coin}, {2}, m));
    CHECK_THROWS_AS(DensityMatrix({Subsystem::Coin}, {3}, m), BadSubsystemSet);
    CHECK_THROWS_AS(DensityMatrix({Subsystem::X, Subsystem::X}, {1, 2}, m), BadSubsystemSet);
    m(0, 1) = 0.3;
    CHECK_THROWS_AS(DensityMatrix({Subsystem::Coin}, {2}, m), NumericalInstability);
}

TEST_CASE("partial trace") {
    const auto rho = to_density(ghz(), SupportBasis::occupied(ghz()));
    SUBCASE("GHZ marginals are maximally mixed on the diagonal") {
        const Subsystem keep[] = {Subsystem::X};
        const auto r = partial_trace(rho, keep);
        CHECK(r.dim() == 2);
        CHECK(std::abs(r.data()(0, 0) - 0.5) <= 1e-15);
        CHECK(std::abs(r.data()(0, 1)) <= 1e-15);
    }
    SUBCASE("GHZ two-party marginal is classically correlated") {
        const Subsystem keep[] = {Subsystem::X, Subsystem::Coin};
        const auto r = partial_trace(rho, keep);
        CHECK(r.labels() == std::vector<Subsystem>{Subsystem::X, Subsystem::Coin});
        CHECK(std::abs(r.data()(0, 0) - 0.5) <= 1e-15);
        CHECK(std::abs(r.data()(3, 3) - 0.5) <= 1e-15);
        CHECK(std::abs(r.data()(0, 3)) <= 1e-15);
        CHECK(negativity(r, Subsystem::X) == 0.0);
    }
    SUBCASE("product state leaves a pure factor") {
        const auto s = WalkerState::from_amplitudes(
            1, {{{0, 0, 0}, 0.5}, {{0, 0, 1}, 0.5}, {{1, 0, 0}, 0.5}, {{1, 0, 1}, 0.5}});
        const auto p = to_density(s, SupportBasis::occupied(s));
        const Subsystem keep[] = {Subsystem::Coin};
        const auto r = partial_trace(p, keep);
        CHECK(std::abs((r.data() * r.data()).trace() - 1.0) <= 1e-12);
    }
    SUBCASE("reduced spectra of a pure bipartition coincide") {
        std::mt19937_64 rng(8);
        const auto s = testing::random_state(rng, 2, 1);
        const auto p = to_density(s, SupportBasis::occupied(s));
        const Subsystem x[] = {Subsystem::X};
        const Subsystem yc[] = {Subsystem::Y, Subsystem::Coin};
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> a(partial_trace(p, x).data());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> b(partial_trace(p, yc).data());
        const auto& ea = a.eigenvalues();
        const auto& eb = b.eigenvalues();
        for (Eigen::Index i = 0; i < ea.size(); ++i) {
            CHECK(std::abs(ea(ea.size() - 1 - i) - eb(eb.size() - 1 - i)) <= 1e-12);
        }
    }
    SUBCASE("bad keep sets") {
        const Subsystem none[] = {Subsystem::X, Subsystem::Y, Subsystem::Coin};
        CHECK_THROWS_AS((void)partial_trace(rho, none), BadSubsystemSet);
        CHECK_THROWS_AS((void)partial_trace(rho, std::span<const Subsystem>{}), BadSubsystemSet);
        const Subsystem dup[] = {Subsystem::X, Subsystem::X};
        CHECK_THROWS_AS((void)partial_trace(rho, dup), BadSubsystemSet);
        const Subsystem keep[] = {Subsystem::X};
        const auto r = partial_trace(rho, keep);
        const Subsystem y[] = {Subsystem::Y};
        CHECK_THROWS_AS((void)partial_trace(r, y), BadSubsystemSet);
    }
}

TEST_CASE("partial transpose") {
    const auto bell = WalkerState::from_amplitudes(1, {{{0, 0, 0}, kInvSqrt2}, {{1, 0, 1}, kInvSqrt2}});
    const auto rho = to_density(bell, SupportBasis::occupied(bell));
    const Subsystem keep[] = {Subsystem::X, Subsystem::Coin};
    const auto xc = partial_trace(rho, keep);
    const auto pt = partial_transpose(xc, Subsystem::Coin);
    // |00><11| moves to |01><10|
    CHECK(std::abs(pt(1, 2) - 0.5) <= 1e-15);
    CHECK(std::abs(pt(0, 3)) <= 1e-15);
    SUBCASE("transposing either side gives the same spectrum") {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> a(pt);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> b(partial_transpose(xc, Subsystem::X));
        CHECK((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-12);
    }
    SUBCASE("involution") {
        std::mt19937_64 rng(12);
        const auto s = testing::random_state(rng, 2, 1);
        const auto p = to_density(s, SupportBasis::occupied(s));
        for (Subsystem w : {Subsystem::X, Subsystem::Y, Subsystem::Coin}) {
            const DensityMatrix once(p.labels(), p.dims(), partial_transpose(p, w));
            CHECK((partial_transpose(once, w) - p.data()).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("negativity examples") {
    const auto bell = WalkerState::from_amplitudes(1, {{{0, 0, 0}, kInvSqrt2}, {{1, 0, 1}, kInvSqrt2}});
    const auto r = entanglement_report(bell);
    CHECK(r.n_xc == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.n_x_rest == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.n_xy == 0.0);
    CHECK(r.n_y_rest == 0.0);
    CHECK(trace_norm(Eigen::MatrixXcd::Identity(3, 3) * -1.0) == doctest::Approx(3.0));

    const auto product = initial_state(0, 0, testing::minus_coin(), 2);
    const auto p = entanglement_report(product);
    CHECK(p.pi_tangle == 0.0);
    CHECK(p.n_c_rest == 0.0);
}

TEST_CASE("GHZ pi-tangle is one") {
    const auto r = entanglement_report(ghz());
    CHECK(r.n_x_rest == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.n_xy == 0.0);
    CHECK(r.n_xc == 0.0);
    CHECK(r.pi_x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.pi_tangle == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.recomputed_pi_tangle() == doctest::Approx(r.pi_tangle).epsilon(1e-15));
}

TEST_CASE("walk reference values") {
    const auto psi0 = initial_state(0, 0, testing::minus_coin(), 3);
    SUBCASE("G1, t = 2: N_xy") {
        const auto s = evolve(psi0, EvolutionSpec::g1(2));
        CHECK(position_negativity(s) == doctest::Approx(0.427346).epsilon(1e-6));
    }
    SUBCASE("M1, t = 2: pi-tangle") {
        const auto s = evolve(psi0, EvolutionSpec::m1(2));
        const auto r = entanglement_report(s);
        CHECK(std::abs(r.pi_tangle - 2.2070) <= 5e-4);
        CHECK(r.recomputed_pi_tangle() == doctest::Approx(r.pi_tangle).epsilon(1e-12));
    }
    SUBCASE("light-cone box and occupied levels agree") {
        const auto s = evolve(psi0, EvolutionSpec::g1(2));
        const auto rho = to_density(s, SupportBasis::light_cone(2));
        const Subsystem xy[] = {Subsystem::X, Subsystem::Y};
        CHECK(negativity(partial_trace(rho, xy), Subsystem::X) ==
              doctest::Approx(position_negativity(s)).epsilon(1e-12));
    }
}

TEST_CASE("property: one-versus-rest negativities match the Schmidt oracle") {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 20; ++rep) {
        const int t = 1 + rep % 4;
        const CoinState q{std::uniform_real_distribution<double>(0, kPi)(rng), 1.0};
        const auto s = evolve(initial_state(0, 0, q, t + 1),
                              EvolutionSpec::custom(testing::random_coin(rng), t));
        const auto r = entanglement_report(s);
        CHECK(std::abs(r.n_x_rest - oracle::schmidt_negativity(s, Subsystem::X)) <= 1e-8);
        CHECK(std::abs(r.n_y_rest - oracle::schmidt_negativity(s, Subsystem::Y)) <= 1e-8);
        CHECK(std::abs(r.n_c_rest - oracle::schmidt_negativity(s, Subsystem::Coin)) <= 1e-8);
    }
}

TEST_CASE("property: pairwise negativity does not depend on which side is transposed") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        const auto s = testing::random_state(rng, 2, 1);
        const auto rho = to_density(s, SupportBasis::occupied(s));
        const Subsystem xy[] = {Subsystem::X, Subsystem::Y};
        const Subsystem xc[] = {Subsystem::X, Subsystem::Coin};
        const auto a = partial_trace(rho, xy);
        const auto b = partial_trace(rho, xc);
        CHECK(negativity(a, Subsystem::X) == doctest::Approx(negativity(a, Subsystem::Y)).epsilon(1e-10));
        CHECK(negativity(b, Subsystem::X) == doctest::Approx(negativity(b, Subsystem::Coin)).epsilon(1e-10));
        CHECK(negativity(a, Subsystem::X) >= 0.0);
    }
}

TEST_CASE("property: negativities are invariant under translation") {
    std::mt19937_64 rng(4);
    const auto s = evolve(initial_state(0, 0, testing::minus_coin(), 6), EvolutionSpec::m1(3));
    const auto a = entanglement_report(s);
    const auto b = entanglement_report(translate(s, 2, -3));
    CHECK(a.pi_tangle == doctest::Approx(b.pi_tangle).epsilon(1e-12));
    CHECK(a.n_xy == doctest::Approx(b.n_xy).epsilon(1e-12));
}
