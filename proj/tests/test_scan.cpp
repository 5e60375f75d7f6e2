#include <doctest.h>

#include "ekm/scan.hpp"
#include "test_util.hpp"

using ekm::AdmissibleSetup;
using ekm::Rational;
using ekm::ScanAxis;

TEST_CASE("one-axis scan over a hyperbolic factor flips exactly once") {
    AdmissibleSetup base;
    base.factors = {{1, Rational(1, 2), Rational(-3), std::nullopt}};
    const std::vector<ScanAxis> axes = {{0, Rational(1, 40), Rational(39, 40), 38}};
    const auto rows = ekm::classification_scan(base, axes, 2);
    REQUIRE(rows.size() == 39);
    int flips = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (ekm::extremal_exists(rows[i].kind) != ekm::extremal_exists(rows[i - 1].kind)) ++flips;
    CHECK(flips == 1);
    CHECK(ekm::extremal_exists(rows.front().kind));
    CHECK(!ekm::extremal_exists(rows.back().kind));
}

TEST_CASE("scan results are independent of the thread count") {
    AdmissibleSetup base;
    base.factors = {{1, Rational(1, 2), Rational(2), std::nullopt},
                    {1, Rational(-1, 2), Rational(-2), std::nullopt}};
    const std::vector<ScanAxis> axes = {{0, Rational(1, 12), Rational(11, 12), 10},
                                        {1, Rational(-11, 12), Rational(-1, 12), 10}};
    const auto serial = ekm::classification_scan(base, axes, 1);
    const auto parallel = ekm::classification_scan(base, axes, 4);
    CHECK(ekm::scan_csv(serial, 2) == ekm::scan_csv(parallel, 2));
}

TEST_CASE("axis validation") {
    AdmissibleSetup base;
    base.factors = {{1, Rational(1, 2), Rational(2), std::nullopt}};
    CHECK_THROWS_AS(ekm::classification_scan(base, {}, 1), ekm::OutOfRange);
    CHECK_THROWS_AS(ekm::classification_scan(base, {{3, Rational(0), Rational(1), 4}}, 1),
                    ekm::OutOfRange);
    CHECK_THROWS_AS(ekm::classification_scan(base, {{0, Rational(1), Rational(0), 4}}, 1),
                    ekm::OutOfRange);
}

TEST_CASE("cells with invalid class parameters are marked, not classified") {
    AdmissibleSetup base;
    base.factors = {{1, Rational(1, 2), Rational(2), std::nullopt}};
    // grid crossing x = 0 and |x| = 1
    const std::vector<ScanAxis> axes = {{0, Rational(-1), Rational(1), 4}};
    const auto rows = ekm::classification_scan(base, axes, 1);
    REQUIRE(rows.size() == 5);
    CHECK(!rows[0].valid); // x = -1
    CHECK(rows[1].valid);  // x = -1/2
    CHECK(!rows[2].valid); // x = 0
    CHECK(rows[3].valid);  // x = 1/2
    CHECK(!rows[4].valid); // x = 1
}
