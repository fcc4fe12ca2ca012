#include <doctest.h>

#include <cmath>

#include "qls/errors.hpp"
#include "qls/lineshape.hpp"
#include "synthetic_table.hpp"

using namespace qls;

namespace {
PhysicalParams fast_params() {
    PhysicalParams p;
    p.fock_cutoff = 8;
    return p;
}
}  // namespace

TEST_CASE("grid points are inclusive and evenly spaced") {
    const DetuningGrid g{-1.0, 1.0, 0.5};
    CHECK(g.points() == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
    CHECK_THROWS_AS((DetuningGrid{1.0, -1.0, 0.5}.points()), SchemaError);
}

TEST_CASE("interpolation: node identity, midpoint, out of range") {
    LineshapeTable t;
    t.detunings = {0.0, 1.0, 2.0};
    t.signal = {0.1, 0.2, 0.4};
    t.background = 0.05;
    CHECK(t.signal_at(1.0) == 0.2);  // exact at nodes
    CHECK(t.signal_at(1.5) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK_THROWS_AS(t.signal_at(2.5), OutOfRange);
    CHECK_THROWS_AS(t.signal_at(-0.1), OutOfRange);
}

TEST_CASE("fwhm of a synthetic triangle profile") {
    LineshapeTable t;
    for (double d = -4.0; d <= 4.0 + 1e-9; d += 0.5) {
        t.detunings.push_back(d);
        t.signal.push_back(std::max(0.0, 0.8 * (1.0 - std::abs(d) / 4.0)));
    }
    t.background = 0.0;
    // height 0.8, half max 0.4, crossings at +-2
    CHECK(t.fwhm() == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("flat profile has no peak") {
    const LineshapeTable t = qls_test::flat_table(0.3, 4.0);
    CHECK_THROWS_AS(t.fwhm(), NoPeak);
}

TEST_CASE("short-time table: signal and background vanish") {
    const PhysicalParams p = fast_params();
    const LineshapeTable t =
        compute_lineshape(p, 1e-4, DetuningGrid{-2.0, 2.0, 1.0}, ExecutionMode::Serial);
    for (const double s : t.signal) CHECK(s < 1e-6);
    CHECK(t.background < 1e-6);
}

TEST_CASE("probabilities stay in [0, 1] and edges reach background") {
    const PhysicalParams p = fast_params();
    const LineshapeTable t =
        compute_lineshape(p, 10.0, DetuningGrid{-12.0, 12.0, 0.5});
    for (const double s : t.signal) {
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
    CHECK(t.edges_reach_background());
}

TEST_CASE("serial and parallel paths produce identical bytes") {
    const PhysicalParams p = fast_params();
    const DetuningGrid g{-3.0, 3.0, 0.5};
    const std::vector<double> times{5.0, 12.0};
    const auto a = compute_lineshape_multi(p, times, g, ExecutionMode::Serial);
    const auto b = compute_lineshape_multi(p, times, g, ExecutionMode::Parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].serialize() == b[i].serialize());
    }
}

TEST_CASE("identical inputs give identical tables bit for bit") {
    const PhysicalParams p = fast_params();
    const DetuningGrid g{-2.0, 2.0, 1.0};
    const LineshapeTable a = compute_lineshape(p, 7.0, g);
    const LineshapeTable b = compute_lineshape(p, 7.0, g);
    CHECK(a.serialize() == b.serialize());
}

TEST_CASE("grid refinement changes interpolants below 1e-3") {
    const PhysicalParams p = fast_params();
    // the default spacing (0.25) against its halving
    const LineshapeTable coarse =
        compute_lineshape(p, 10.0, DetuningGrid{-4.0, 4.0, 0.25}, ExecutionMode::Parallel);
    const LineshapeTable fine =
        compute_lineshape(p, 10.0, DetuningGrid{-4.0, 4.0, 0.125}, ExecutionMode::Parallel);
    for (double d = -3.9; d <= 3.9; d += 0.173) {
        CHECK(std::abs(coarse.signal_at(d) - fine.signal_at(d)) < 1e-3);
    }
}

TEST_CASE("background is independent of the detuning grid") {
    const PhysicalParams p = fast_params();
    const LineshapeTable a = compute_lineshape(p, 9.0, DetuningGrid{-2.0, 2.0, 1.0});
    const LineshapeTable b = compute_lineshape(p, 9.0, DetuningGrid{-6.0, 6.0, 2.0});
    CHECK(a.background == b.background);
}

TEST_CASE("table JSON round trip preserves everything") {
    const PhysicalParams p = fast_params();
    const LineshapeTable a = compute_lineshape(p, 6.0, DetuningGrid{-2.0, 2.0, 0.5});
    const LineshapeTable b = LineshapeTable::deserialize(a.serialize());
    CHECK(a.serialize() == b.serialize());
    CHECK(a.background == b.background);
    CHECK(a.detunings == b.detunings);
    CHECK(a.signal == b.signal);
}

TEST_CASE("deserialize rejects tampered payloads") {
    const PhysicalParams p = fast_params();
    const LineshapeTable a = compute_lineshape(p, 6.0, DetuningGrid{-1.0, 1.0, 1.0});
    std::string bytes = a.serialize();
    CHECK_THROWS_AS(LineshapeTable::deserialize(bytes.substr(0, bytes.size() / 2)),
                    CorruptCacheEntry);
    const auto pos = bytes.find("\"background\"");
    REQUIRE(pos != std::string::npos);
    bytes[pos + 16] = bytes[pos + 16] == '9' ? '8' : '9';
    CHECK_THROWS_AS(LineshapeTable::deserialize(bytes), CorruptCacheEntry);
}
