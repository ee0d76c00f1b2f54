#include <cmath>
#include <random>

#include "doctest.h"

#include "aqw/security.hpp"
#include "oracles/attack_oracle.hpp"
#include "test_support.hpp"

using namespace aqw;

namespace {

PrivateKey golden_key(Preset preset, int t = 2) {
    return {EvolutionSpec::from_preset(preset, t), 0, 0, testing::minus_coin()};
}

oracle::AttackInstance golden_instance(Preset preset) {
    oracle::AttackInstance a;
    a.coin = preset_coin(preset);
    a.q = testing::minus_coin().spinor();
    return a;
}

// Dense-oracle detection probabilities for the t = 2 golden instances, msg
// (1, 2), msgBound 3. Computed with oracles/attack_oracle.hpp and frozen.
constexpr double kFrozenDetectionM1 = 1.0;
constexpr double kFrozenDetectionG1 = 1.0;

}  // namespace

TEST_CASE("entropy formulas") {
    SUBCASE("D = 1024, |tau| = 16, N = 2") {
        const KeySpace ks{1024, 16, 2};
        CHECK(mixed_public_key_entropy(ks) == doctest::Approx(1.0 + 2.0 * std::log2(5.0)));
        CHECK(mixed_public_key_entropy(ks) == doctest::Approx(5.643856).epsilon(1e-6));
        CHECK(private_key_entropy(ks) == doctest::Approx(19.643856).epsilon(1e-6));
        CHECK(ks.basis_states() == 50.0);
    }
    SUBCASE("Shannon entropy of the enumerated uniform key set") {
        // D = 4, |tau| = 2, N = 1: 4 * 2 * 9 * 2 equally likely private keys
        const KeySpace ks{4, 2, 1};
        const std::vector<double> p(4 * 2 * 9 * 2, 1.0 / 144.0);
        CHECK(shannon_entropy_bits(p) == doctest::Approx(private_key_entropy(ks)).epsilon(1e-12));
    }
    SUBCASE("invalid spaces") {
        CHECK_THROWS_AS((void)private_key_entropy({0, 1, 1}), ConfigError);
        CHECK_THROWS_AS((void)private_key_entropy({1, 0.5, 1}), ConfigError);
        CHECK_THROWS_AS((void)mixed_public_key_entropy({1, 1, -1}), ConfigError);
    }
}

TEST_CASE("security report") {
    const auto big = security_report({std::ldexp(1.0, 80), std::ldexp(1.0, 10), 15});
    CHECK(big.gap_bits == doctest::Approx(90.0).epsilon(1e-12));
    CHECK(big.secure);
    CHECK(big.holevo_bound_bits == big.von_neumann_bits);

    const auto small = security_report({1, 1, 15});
    CHECK(small.gap_bits == doctest::Approx(0.0));
    CHECK_FALSE(small.secure);
}

TEST_CASE("property: entropy gap equals log2(D |tau|)") {
    std::mt19937_64 rng(50);
    std::uniform_real_distribution<double> e(0.0, 100.0);
    std::uniform_int_distribution<int> n(0, 1000);
    for (int i = 0; i < 50; ++i) {
        const KeySpace ks{std::exp2(e(rng)), std::exp2(e(rng) / 4), n(rng)};
        const auto r = security_report(ks);
        CHECK(std::abs(r.gap_bits - std::log2(ks.operators * ks.step_choices)) <= 1e-10);
    }
}

TEST_CASE("torus step operator is unitary") {
    for (int P = 1; P <= 5; ++P) {
        const auto U = torus_step_operator(preset_coin(Preset::M1), P);
        const auto I = Eigen::MatrixXcd::Identity(U.rows(), U.cols());
        CHECK((U.adjoint() * U - I).cwiseAbs().maxCoeff() <= 1e-12);
    }
    CHECK_THROWS_AS((void)torus_step_operator({}, 0), ConfigError);
}

TEST_CASE("explicit mixed public key is maximally mixed") {
    for (int N = 0; N <= 2; ++N) {
        for (Preset p : {Preset::M1, Preset::G1}) {
            const auto rho = explicit_mixed_public_key(N, EvolutionSpec::from_preset(p, 3));
            const auto d = static_cast<double>(rho.rows());
            CHECK(d == KeySpace{1, 1, N}.basis_states());
            const Eigen::MatrixXcd diff = rho - Eigen::MatrixXcd::Identity(rho.rows(), rho.cols()) / d;
            CHECK(diff.cwiseAbs().maxCoeff() <= 1e-10);
            CHECK(von_neumann_entropy_bits(rho) ==
                  doctest::Approx(mixed_public_key_entropy({1, 1, N})).epsilon(1e-10));
        }
    }
}

TEST_CASE("measurement outcomes") {
    const auto s = WalkerState::from_amplitudes(
        2, {{{0, 0, 0}, 0.6}, {{0, 0, 1}, Complex(0, 0.6)}, {{1, -1, 1}, Complex(0.52915026221291811, 0)}});
    SUBCASE("position and coin") {
        const auto out = measurement_outcomes(s, EveBasis::PositionCoin);
        REQUIRE(out.size() == 3);
        CHECK(out[0].probability == doctest::Approx(0.36));
        CHECK(out[0].collapsed.size() == 1);
        CHECK(out[0].position == std::pair{0, 0});
    }
    SUBCASE("position only keeps the coin coherent") {
        const auto out = measurement_outcomes(s, EveBasis::PositionOnly);
        REQUIRE(out.size() == 2);
        CHECK(out[0].probability == doctest::Approx(0.72));
        CHECK(std::abs(out[0].collapsed.amplitude(0, 0, 1) - Complex(0, std::sqrt(0.5))) <= 1e-12);
    }
    SUBCASE("coin only") {
        const auto out = measurement_outcomes(s, EveBasis::CoinOnly);
        REQUIRE(out.size() == 2);
        CHECK_FALSE(out[1].position.has_value());
        CHECK(out[1].collapsed.size() == 2);
    }
    SUBCASE("none") {
        const auto out = measurement_outcomes(s, EveBasis::None);
        REQUIRE(out.size() == 1);
        CHECK(distance(out[0].collapsed, s) == 0.0);
    }
    SUBCASE("sampling follows the outcome probabilities") {
        std::mt19937_64 rng(3);
        int origin = 0;
        const int trials = 20000;
        for (int i = 0; i < trials; ++i) {
            if (measure(s, EveBasis::PositionOnly, rng).position == std::pair{0, 0}) ++origin;
        }
        const double sigma = std::sqrt(0.72 * 0.28 / trials);
        CHECK(std::abs(origin / double(trials) - 0.72) <= 4 * sigma);
    }
    CHECK(parse_eve_basis("position-coin") == EveBasis::PositionCoin);
    CHECK_FALSE(parse_eve_basis("diagonal").has_value());
}

TEST_CASE("trial seeds are distinct and reproducible") {
    CHECK(trial_seed(1, 0) == trial_seed(1, 0));
    CHECK(trial_seed(1, 0) != trial_seed(1, 1));
    CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("dense oracle reproduces the frozen detection rates") {
    CHECK(oracle::intercept_resend_detection(golden_instance(Preset::M1),
                                             oracle::Measured::PositionCoin) ==
          doctest::Approx(kFrozenDetectionM1).epsilon(1e-12));
    CHECK(oracle::intercept_resend_detection(golden_instance(Preset::G1),
                                             oracle::Measured::PositionCoin) ==
          doctest::Approx(kFrozenDetectionG1).epsilon(1e-12));
}

TEST_CASE("intercept-resend enumeration matches the dense oracle") {
    for (Preset p : {Preset::M1, Preset::G1}) {
        CAPTURE(preset_name(p));
        const auto stats = intercept_resend(golden_key(p), {1, 2}, 3, AttackMethod::Enumeration);
        const double frozen = p == Preset::M1 ? kFrozenDetectionM1 : kFrozenDetectionG1;
        CHECK(stats.bob_detects == doctest::Approx(frozen).epsilon(1e-12));
        CHECK(stats.bob_detects > 0.0);
        CHECK(stats.eve_correct_both > 0.0);
        CHECK(stats.eve_correct_both <= 1.0);

        const auto pos = intercept_resend(golden_key(p), {1, 2}, 3, AttackMethod::Enumeration, 0, 1,
                                          EveBasis::PositionOnly);
        CHECK(pos.bob_detects ==
              doctest::Approx(oracle::intercept_resend_detection(golden_instance(p),
                                                                 oracle::Measured::Position))
                  .epsilon(1e-12));
    }
}

TEST_CASE("null attack is undetectable") {
    const auto stats = intercept_resend(golden_key(Preset::M1), {0, 0}, 3, AttackMethod::Enumeration,
                                        0, 1, EveBasis::None);
    CHECK(stats.bob_detects == 0.0);
    CHECK(stats.eve_correct_both == doctest::Approx(1.0 / 49.0));
}

TEST_CASE("Monte Carlo agrees with enumeration within 3 sigma") {
    const PrivateKey key = golden_key(Preset::G1);
    for (EveBasis b : {EveBasis::PositionCoin, EveBasis::CoinOnly}) {
        const auto exact = intercept_resend(key, {1, 2}, 3, AttackMethod::Enumeration, 0, 1, b);
        const long long trials = 5000;
        const auto mc = intercept_resend(key, {1, 2}, 3, AttackMethod::MonteCarlo, trials, 9, b);
        const double p = exact.bob_detects;
        const double sigma = std::sqrt(std::max(p * (1 - p), 1e-12) / trials);
        CHECK(std::abs(mc.bob_detects - p) <= 3 * sigma + 1e-12);
        CHECK(mc.seed == 9);
        CHECK(mc.trials == trials);
        // same seed, same answer
        const auto again = intercept_resend(key, {1, 2}, 3, AttackMethod::MonteCarlo, trials, 9, b);
        CHECK(again.eve_correct_both == mc.eve_correct_both);
    }
}

TEST_CASE("enumeration is refused beyond t = 3") {
    CHECK_THROWS_AS((void)intercept_resend(golden_key(Preset::M1, 4), {1, 2}, 3, AttackMethod::Enumeration),
                    ConfigError);
    CHECK_THROWS_AS((void)intercept_resend(golden_key(Preset::M1), {1, 2}, 3, AttackMethod::MonteCarlo, 0),
                    ConfigError);
}

TEST_CASE("man in the middle") {
    const PrivateKey key = golden_key(Preset::M1);
    SUBCASE("a grid holding only the true key always wins") {
        KeyGrid grid{{key.spec.coin}, {2}, 0};
        const auto stats = mitm_key_guess(key, {1, 2}, 3, grid, 50);
        CHECK(stats.eve_correct_both == 1.0);
        CHECK(stats.argmax_correct == 1.0);
        CHECK(stats.bob_detects == 0.0);
    }
    SUBCASE("random coins excluding the true one do no better than guessing") {
        const auto grid = KeyGrid::random_coins(2000, {2}, 0, 5, key.spec.coin);
        CHECK(grid.coins.size() == 2000);
        CHECK(grid.key_space().operators == 2000.0);
        const long long trials = 2000;
        const auto stats = mitm_key_guess(key, {1, 2}, 3, grid, trials, 11);
        const double base = 1.0 / 49.0;
        CHECK(stats.eve_correct_both <= base + 3 * std::sqrt(base * (1 - base) / trials));
        CHECK(stats.bob_detects > 0.9);
        // the raw argmax still leaks: the walk commutes with the translation
        REQUIRE(stats.argmax_correct.has_value());
        CHECK(*stats.argmax_correct > base);
    }
    SUBCASE("bad grids") {
        CHECK_THROWS_AS((void)mitm_key_guess(key, {1, 2}, 3, KeyGrid{}, 10), ConfigError);
        CHECK_THROWS_AS((void)mitm_key_guess(key, {1, 2}, 3, KeyGrid{{key.spec.coin}, {0}, 0}, 10),
                        ConfigError);
    }
}
