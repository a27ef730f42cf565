#include <doctest.h>

#include <stdexcept>

#include "bb84sec/entropy.hpp"
#include "test_util.hpp"

using namespace bb84sec;

TEST_CASE("binary entropy endpoints and peak") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == approx(1.0));
}

TEST_CASE("binary entropy reference values") {
    CHECK(binary_entropy(0.11) == approx(0.499915958164528));
    CHECK(binary_entropy(0.25) == approx(0.811278124459133));
    CHECK(binary_entropy(2.0 / 15.0) == approx(0.566509506552905));
}

TEST_CASE("binary entropy symmetry and monotonicity") {
    double previous = -1.0;
    for (int i = 0; i <= 50; ++i) {
        const double x = i / 100.0;  // [0, 0.5]
        CHECK(binary_entropy(x) == approx(binary_entropy(1.0 - x), 1e-13));
        CHECK(binary_entropy(x) > previous);
        previous = binary_entropy(x);
    }
}

TEST_CASE("binary entropy rejects values outside the unit interval") {
    CHECK_THROWS_AS(binary_entropy(-0.01), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(1.01), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(std::nan("")), std::domain_error);
}

TEST_CASE("agreement probability validates and clamps") {
    CHECK(AgreementProbability(0.75).value() == 0.75);
    CHECK(AgreementProbability(0.75).disagreement() == 0.25);
    // sub-ulp excursions from the closed forms are absorbed
    CHECK(AgreementProbability(1.0 + 1e-13).value() == 1.0);
    CHECK(AgreementProbability(-1e-13).value() == 0.0);
    CHECK_THROWS_AS(AgreementProbability(1.001), std::domain_error);
    CHECK_THROWS_AS(AgreementProbability(-0.001), std::domain_error);
}

TEST_CASE("mutual information reference values") {
    CHECK(mutual_information(AgreementProbability(1.0)) == approx(1.0));
    CHECK(mutual_information(AgreementProbability(0.5)) == approx(0.0));
    CHECK(mutual_information(AgreementProbability(0.75)) == approx(0.188721875540867));
    CHECK(mutual_information(AgreementProbability(0.875)) == approx(0.456435556800404));
    CHECK(mutual_information(AgreementProbability(0.625)) == approx(0.045565997075035));
}

TEST_CASE("mutual information is symmetric around a coin toss") {
    // agreement a and 1-a leak exactly the same amount
    for (int i = 0; i <= 10; ++i) {
        const double a = 0.5 + i * 0.05;
        CHECK(mutual_information(AgreementProbability(a)) ==
              approx(mutual_information(AgreementProbability(1.0 - a)), 1e-13));
    }
}
