#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srlaser/params.hpp"
#include "srlaser/semiclassical.hpp"

#include <cmath>

using namespace srl;

namespace {

LaserParams base(double gamma_perp, double P) {
    LaserParams p;
    p.kappa = 50.0;
    p.gamma_perp = gamma_perp;
    p.Omega0 = 34.0;
    p.f = 0.5;
    p.N0 = 100.0;
    p.P = P;
    return p;
}

} // namespace

TEST_CASE("below threshold the field is dark and the inversion tracks the pump") {
    LaserParams p = base(50.0, 0.5);   // Pth = 1.044
    const DerivedParams d = derive(p);
    const SemiclassicalState s = semiclassical_state(p, d);
    CHECK_FALSE(s.lasing);
    CHECK(s.n == 0.0);
    CHECK(s.N == doctest::Approx(p.N0 * (p.P - 1.0) / (p.P + 1.0)).epsilon(1e-14));
}

TEST_CASE("above threshold the inversion clamps and the photon number is frozen") {
    LaserParams p = base(50.0, 2.0);
    const DerivedParams d = derive(p);
    const SemiclassicalState s = semiclassical_state(p, d);
    CHECK(s.lasing);
    CHECK(s.N == d.Nth);
    CHECK(std::abs(s.n - 0.46756055363321808) <= 1e-15);
}

TEST_CASE("energy flows balance exactly above threshold") {
    for (double P : {1.5, 2.0, 8.0, 40.0}) {
        LaserParams p = base(50.0, P);
        const DerivedParams d = derive(p);
        const SemiclassicalState s = semiclassical_state(p, d);
        REQUIRE(s.lasing);
        const double Ne = excited_from_inversion(s.N, p.N0);
        const double Ng = ground_from_inversion(s.N, p.N0);
        // pump input = cavity loss + spontaneous decay
        CHECK(std::abs(2.0 * p.kappa * s.n + Ne - P * Ng) <= 1e-12 * P * Ng);
    }
}

TEST_CASE("photon number is continuous at threshold") {
    LaserParams p = base(50.0, 0.0);
    const DerivedParams d = derive(p);
    p.P = d.Pth * (1.0 + 1e-9);
    const SemiclassicalState above = semiclassical_state(p, d);
    CHECK(above.lasing);
    CHECK(above.n <= 1e-6);            // vanishes as P -> Pth+
    p.P = d.Pth * (1.0 - 1e-9);
    const SemiclassicalState below = semiclassical_state(p, d);
    CHECK_FALSE(below.lasing);
    CHECK(below.n == 0.0);
    // inversion is continuous too: N -> Nth from below
    CHECK(std::abs(below.N - d.Nth) <= 1e-6 * d.Nth);
}

TEST_CASE("no pump can reach threshold when the medium is too small") {
    LaserParams p = base(1500.0, 0.0); // Nth = 64.9
    p.N0 = 50.0;
    const DerivedParams d = derive(p);
    for (double P : {0.5, 1.0, 10.0, 1e4}) {
        p.P = P;
        const SemiclassicalState s = semiclassical_state(p, d);
        CHECK_FALSE(s.lasing);
        CHECK(s.n == 0.0);
        CHECK(s.N < d.Nth);
    }
}

TEST_CASE("inversion saturates toward N0 at infinite pump without lasing") {
    LaserParams p = base(1500.0, 1e6);
    p.N0 = 50.0;
    const DerivedParams d = derive(p);
    const SemiclassicalState s = semiclassical_state(p, d);
    CHECK(s.N == doctest::Approx(p.N0).epsilon(1e-5));
    CHECK(s.N <= p.N0);
}
