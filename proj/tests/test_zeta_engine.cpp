#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "support/test_oracles.hpp"
#include "zetalab/zeta.hpp"

using namespace zetalab;
using Catch::Approx;

TEST_CASE("zeta at classical points") {
    CHECK(zeta(cplx(2.0, 0.0)).real() ==
          Approx(constants::pi * constants::pi / 6.0).epsilon(1e-13));
    CHECK(std::abs(zeta(cplx(2.0, 0.0)).imag()) < 1e-14);
    CHECK(zeta(cplx(0.0, 0.0)).real() == Approx(-0.5).epsilon(1e-12));
    CHECK(zeta(cplx(3.0, 0.0)).real() == Approx(1.2020569031595943).epsilon(1e-13));
    // functional-equation fallback
    CHECK(zeta(cplx(-1.0, 0.0)).real() == Approx(-1.0 / 12.0).epsilon(1e-11));
    CHECK_THROWS_AS(zeta(cplx(1.0, 0.0)), domain_error);
}

TEST_CASE("zeta vanishes at the first ordinate the engine locates") {
    ZeroSet zs = find_zeros(10.0, 15.0);
    REQUIRE(zs.records.size() == 1);
    CHECK(std::abs(zeta(cplx(0.5, zs.records[0].ordinate))) < 1e-8);
    CHECK(zs.records[0].ordinate == Approx(14.134725141734694).margin(1e-9));
}

TEST_CASE("rs_theta series") {
    CHECK_THROWS_AS(rs_theta(5.0), domain_error);
    CHECK(rs_theta(100.0) > rs_theta(50.0));

    // root of theta located by an independent bisection on the series
    double a = 10.0, b = 30.0;
    for (int i = 0; i < 80; ++i) {
        double m = 0.5 * (a + b);
        if (rs_theta(m) < 0)
            a = m;
        else
            b = m;
    }
    CHECK(0.5 * (a + b) == Approx(17.8455995).margin(1e-6));

    // order-3 vs order-5 tail: the next asymptotic term is below 1e-9 at 1000
    double t = 1000.0;
    double next_term = 31.0 / (80640.0 * std::pow(t, 5.0));
    CHECK(std::abs(next_term) < 1e-9);
}

TEST_CASE("hardy Z is real, vanishes at zeros, and flips sign across them") {
    ZeroSet zs = find_zeros(10.0, 25.0);
    REQUIRE(zs.records.size() == 2);  // 14.1347, 21.0220
    for (const auto& r : zs.records) CHECK(std::abs(hardy_Z(r.ordinate)) < 1e-8);
    // sign table derived from the located zeros: one zero in (14, 15),
    // another in (15, 22)
    double z14 = hardy_Z(14.0), z15 = hardy_Z(15.0), z22 = hardy_Z(22.0);
    CHECK((z14 < 0) != (z15 < 0));
    CHECK((z15 < 0) != (z22 < 0));
    CHECK(z14 == Approx(-0.10562).margin(1e-3));

    // at the first Gram point Z is plus/minus |zeta| and well above 1
    CHECK(std::abs(hardy_Z(17.8455995)) > 1.0);
    CHECK(std::abs(hardy_Z(17.8455995)) ==
          Approx(std::abs(zeta(cplx(0.5, 17.8455995)))).epsilon(1e-12));
}

TEST_CASE("find_zeros locates all 29 zeros below 100") {
    ZeroSet zs = find_zeros(10.0, 100.0);
    CHECK(zs.records.size() == 29);
    CHECK(zs.t_max_complete == 100.0);
    CHECK(std::nearbyint(zero_count_theoretic(100.0)) == 29.0);
    for (const auto& r : zs.records) {
        CHECK(std::abs(hardy_Z(r.ordinate)) < 1e-8);
        CHECK(r.real_part == 0.5);
        CHECK(r.multiplicity == 1);
        CHECK(r.source == zero_source::computed);
    }
    // independent bisection with a halved scan step finds the same ordinates
    auto ind = oracles::bisection_zeros(10.0, 100.0, 0.35);
    REQUIRE(ind.size() == 29);
    for (std::size_t i = 0; i < ind.size(); ++i)
        CHECK(std::abs(ind[i] - zs.records[i].ordinate) < 1e-8);
}

TEST_CASE("find_zeros endpoints in (10, 50)") {
    ZeroSet zs = find_zeros(10.0, 50.0);
    REQUIRE(zs.records.size() == 10);
    CHECK(zs.records.front().ordinate == Approx(14.134725).margin(1e-6));
    CHECK(zs.records.back().ordinate == Approx(49.773832).margin(1e-6));
}

TEST_CASE("find_zeros degenerate and invalid ranges") {
    CHECK(find_zeros(50.0, 50.0).records.empty());
    CHECK_THROWS_AS(find_zeros(5.0, 50.0), domain_error);
    CHECK_THROWS_AS(find_zeros(10.0, 2e4), domain_error);
}

TEST_CASE("zero_count_theoretic values") {
    CHECK(zero_count_theoretic(100.0) == Approx(29.0027).margin(2e-3));
    CHECK(zero_count_theoretic(1000.0) == Approx(648.62).margin(0.05));
    CHECK(zero_count_theoretic(200.0) > zero_count_theoretic(100.0));
    // located count at T=1000 within |S(T)| <= 3 of the smooth count
    ZeroSet zs = find_zeros(10.0, 1000.0);
    CHECK(std::abs(static_cast<double>(zs.records.size()) - zero_count_theoretic(1000.0)) <=
          3.0);
    CHECK(zs.records.size() == 649);
}

TEST_CASE("simplicity witness: |Z'| well away from zero at every located zero") {
    ZeroSet zs = find_zeros(10.0, 200.0);
    CHECK(zs.anomalies.empty());
    for (const auto& r : zs.records) {
        double zp = (hardy_Z(r.ordinate + 1e-5) - hardy_Z(r.ordinate - 1e-5)) / 2e-5;
        CHECK(std::abs(zp) > 1e-6);
    }
}

TEST_CASE("zero table round trip") {
    ZeroSet zs = find_zeros(10.0, 100.0);
    std::string path = "zetalab_test_roundtrip.txt";
    store_zeros(zs, path);
    ZeroSet back = load_zeros(path);
    REQUIRE(back.records.size() == zs.records.size());
    CHECK(back.t_max_complete == zs.t_max_complete);
    for (std::size_t i = 0; i < zs.records.size(); ++i) {
        CHECK(back.records[i].ordinate == zs.records[i].ordinate);  // bitwise
        CHECK(back.records[i].source == zero_source::imported);
    }
    // store -> load -> store reproduces the file byte for byte
    std::string path2 = "zetalab_test_roundtrip2.txt";
    store_zeros(back, path2);
    std::ifstream f1(path), f2(path2);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    std::filesystem::remove(path);
    std::filesystem::remove(path2);
}

TEST_CASE("zero table parsing") {
    std::string path = "zetalab_test_parse.txt";
    {
        std::ofstream f(path);
        f << "# comment\n14.134725142\n21.022039639 0.6\n# complete_to 25\n";
    }
    ZeroSet zs = load_zeros(path);
    REQUIRE(zs.records.size() == 2);
    CHECK(zs.records[0].real_part == 0.5);
    CHECK(zs.records[1].real_part == 0.6);
    CHECK(zs.records[0].source == zero_source::imported);
    CHECK(zs.t_max_complete == 25.0);
    {
        std::ofstream f(path);
        f << "21.0\n14.0\n";
    }
    CHECK_THROWS_AS(load_zeros(path), data_error);
    {
        std::ofstream f(path);
        f << "14.0\nnot_a_number\n";
    }
    CHECK_THROWS_AS(load_zeros(path), data_error);
    try {
        load_zeros(path);
        FAIL("expected a parse error");
    } catch (const data_error& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);  // line number
    }
    std::filesystem::remove(path);
}
