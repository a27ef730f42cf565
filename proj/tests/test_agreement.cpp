#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "bb84sec/agreement.hpp"
#include "test_util.hpp"

using namespace bb84sec;

namespace {

AttackChain random_chain(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> omegas(n);
    for (double& w : omegas) w = uniform01(rng);
    std::vector<double> qs(n + 1);
    double total = 0.0;
    for (double& q : qs) total += (q = uniform01(rng) + 1e-3);
    for (double& q : qs) q /= total;
    return AttackChain(omegas, qs);
}

}  // namespace

TEST_CASE("noiseless agreement without eavesdroppers is perfect") {
    CHECK(noiseless_bob_agreement({}).value() == 1.0);
    CHECK(noiseless_bob_agreement_bruteforce({}).value() == 1.0);
}

TEST_CASE("noiseless agreement reference values") {
    const std::vector<double> one{1.0};
    CHECK(noiseless_bob_agreement(one).value() == approx(0.75));
    const std::vector<double> half{0.5};
    CHECK(noiseless_bob_agreement(half).value() == approx(0.875));
    const std::vector<double> w3{0.3};
    CHECK(noiseless_bob_agreement(w3).value() == approx(0.925));
    const std::vector<double> pair{0.3, 0.7};
    CHECK(noiseless_bob_agreement(pair).value() == approx(0.77625));
}

TEST_CASE("each eavesdropper halves the excess correlation she touches") {
    // with omega = 1 every extra eavesdropper halves (agreement - 1/2)
    std::vector<double> omegas;
    double expected_excess = 0.5;
    for (int n = 1; n <= 10; ++n) {
        omegas.push_back(1.0);
        expected_excess /= 2.0;
        CHECK(noiseless_bob_agreement(omegas).value() == approx(0.5 + expected_excess));
    }
}

TEST_CASE("product form matches subset enumeration for Bob") {
    std::mt19937_64 rng(7041);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t) % 8;
        std::vector<double> omegas(n);
        for (double& w : omegas) w = uniform01(rng);
        CHECK(noiseless_bob_agreement(omegas).value() ==
              approx(noiseless_bob_agreement_bruteforce(omegas).value(), 1e-13));
    }
}

TEST_CASE("subset enumeration refuses unmanageable sizes") {
    const std::vector<double> omegas(21, 0.5);
    CHECK_THROWS_AS(noiseless_bob_agreement_bruteforce(omegas), std::length_error);
}

TEST_CASE("agreement functions validate omega range") {
    const std::vector<double> bad{1.2};
    CHECK_THROWS_AS(noiseless_bob_agreement(bad), std::invalid_argument);
    CHECK_THROWS_AS(noiseless_bob_agreement_bruteforce(bad), std::invalid_argument);
}

TEST_CASE("Bob's agreement composes the attack with one channel pass") {
    CHECK(bob_agreement(ChannelNoise(0.3), {}).value() == approx(0.8));
    const std::vector<double> one{1.0};
    CHECK(bob_agreement(ChannelNoise(0.3), one).value() == approx(0.65));
    const std::vector<double> point8{0.8};
    CHECK(bob_agreement(ChannelNoise(0.1), point8).value() == approx(0.76));
    const std::vector<double> pair{0.8, 0.5};
    CHECK(bob_agreement(ChannelNoise(0.1), pair).value() == approx(0.695));
}

TEST_CASE("eavesdropper agreement reference values") {
    SUBCASE("single interceptor on a clean line sees the 3/4 ceiling") {
        const AttackChain chain({1.0}, {1.0, 0.0});
        CHECK(eve_agreement(1, ChannelNoise(0.0), chain).value() == approx(0.75));
        // with no noise the placement weights cannot matter
        const AttackChain after({1.0}, {0.0, 1.0});
        CHECK(eve_agreement(1, ChannelNoise(0.0), after).value() == approx(0.75));
    }
    SUBCASE("upstream noise degrades her copy") {
        const AttackChain chain({1.0}, {1.0, 0.0});
        CHECK(eve_agreement(1, ChannelNoise(0.3), chain).value() == approx(0.65));
    }
    SUBCASE("second eavesdropper reads a half-degraded stream") {
        const AttackChain chain({1.0, 1.0},
                                {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
        CHECK(eve_agreement(2, ChannelNoise(0.0), chain).value() == approx(0.625));
        CHECK(eve_agreement(1, ChannelNoise(0.0), chain).value() == approx(0.75));
    }
    SUBCASE("mixed chain with explicit weights") {
        const AttackChain chain({0.8, 0.5}, {0.2, 0.5, 0.3});
        const ChannelNoise channel(0.1);
        CHECK(eve_agreement(1, channel, chain).value() == approx(0.694666666666667));
        CHECK(eve_agreement(2, channel, chain).value() == approx(0.568));
        CHECK(eve_agreement(2, ChannelNoise(0.2), chain).value() == approx(0.561));
    }
    SUBCASE("balanced placement, single eavesdropper") {
        const AttackChain chain({0.8}, {0.5, 0.5});
        CHECK(eve_agreement(1, ChannelNoise(0.1), chain).value() ==
              approx(0.686666666666667));
    }
}

TEST_CASE("an eavesdropper who never intercepts holds a coin toss") {
    const AttackChain chain({0.0, 0.9}, {0.2, 0.3, 0.5});
    CHECK(eve_agreement(1, ChannelNoise(0.2), chain).value() == approx(0.5));
}

TEST_CASE("eavesdropper index is validated") {
    const AttackChain chain({0.5}, {0.5, 0.5});
    const ChannelNoise channel(0.1);
    CHECK_THROWS_AS(eve_agreement(0, channel, chain), std::out_of_range);
    CHECK_THROWS_AS(eve_agreement(2, channel, chain), std::out_of_range);
    CHECK_THROWS_AS(eve_agreement_bruteforce(0, channel, chain), std::out_of_range);
    CHECK_THROWS_AS(eve_agreement_bruteforce(2, channel, chain), std::out_of_range);
}

TEST_CASE("product form matches subset enumeration for every eavesdropper") {
    std::mt19937_64 rng(90210);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t) % 6;
        const AttackChain chain = random_chain(rng, n);
        const ChannelNoise channel(uniform01(rng));
        for (std::size_t m = 1; m <= n; ++m) {
            CHECK(eve_agreement(m, channel, chain).value() ==
                  approx(eve_agreement_bruteforce(m, channel, chain).value(), 1e-13));
        }
    }
}

TEST_CASE("eavesdropper enumeration refuses unmanageable sizes") {
    const std::size_t n = 21;
    const AttackChain chain(std::vector<double>(n, 0.5),
                            std::vector<double>(n + 1, 1.0 / (n + 1)));
    CHECK_THROWS_AS(eve_agreement_bruteforce(n, ChannelNoise(0.1), chain),
                    std::length_error);
}

TEST_CASE("downstream eavesdroppers never beat upstream ones on equal terms") {
    // same omega everywhere, uniform noise placement: information degrades
    // monotonically along the line
    const std::size_t n = 5;
    const AttackChain chain(std::vector<double>(n, 0.7),
                            std::vector<double>(n + 1, 1.0 / (n + 1)));
    const ChannelNoise channel(0.2);
    double previous = 1.0;
    for (std::size_t m = 1; m <= n; ++m) {
        const double a = eve_agreement(m, channel, chain).value();
        CHECK(a < previous);
        CHECK(a > 0.5);
        previous = a;
    }
}
