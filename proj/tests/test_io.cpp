#include <doctest.h>

#include <cstdlib>
#include <string>

#include "cohfrac/io.hpp"
#include "cohfrac/verify.hpp"

using namespace cohfrac;

namespace {

std::string fixture(const std::string& name) {
    const char* dir = std::getenv("COHFRAC_FIXTURES");
    return std::string(dir ? dir : "fixtures") + "/" + name;
}

} // namespace

TEST_CASE("state JSON round trip is exact") {
    const DensityMatrix rho = random_density_matrix(3, 21);
    const DensityMatrix back = io::state_from_json(io::state_to_json(rho));
    CHECK((rho.matrix() - back.matrix()).cwiseAbs().maxCoeff() == 0.0);

    const io::json j = io::state_to_json(rho);
    CHECK(j["dim"] == 3);
    CHECK(j["matrix"].size() == 3);
    CHECK(j["matrix"][0][0].size() == 2);
}

TEST_CASE("malformed state JSON is rejected") {
    CHECK_THROWS_AS(io::state_from_json(io::json{{"matrix", io::json::array()}}),
                    ParseError);
    CHECK_THROWS_AS(
        io::state_from_json(io::json::parse(
            R"({"dim": 2, "matrix": [[[1.0, 0.0]], [[0.0, 0.0]]]})")),
        ParseError);
    // Shape fine, invariants violated.
    CHECK_THROWS_AS(
        io::state_from_json(io::json::parse(
            R"({"dim": 2, "matrix": [[[0.5, 0], [0.6, 0]], [[0.6, 0], [0.5, 0]]]})")),
        NotPositive);
}

TEST_CASE("channel JSON round trips") {
    SUBCASE("named spec") {
        const Channel c = make_channel(ChannelSpec::gad(0.75, 0.3));
        const io::json j = io::channel_to_json(c);
        CHECK(j["kind"] == "gad");
        CHECK(j["p"] == doctest::Approx(0.75));
        const Channel back = io::channel_from_json(j);
        REQUIRE(back.spec.has_value());
        CHECK(back.spec->gamma == doctest::Approx(0.3));
        REQUIRE(back.kraus.size() == c.kraus.size());
        for (std::size_t i = 0; i < c.kraus.size(); ++i)
            CHECK((back.kraus[i] - c.kraus[i]).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("raw Kraus list") {
        const Channel c = random_channel(2, 2, 4);
        const Channel back = io::channel_from_json(io::channel_to_json(c));
        REQUIRE(back.kraus.size() == c.kraus.size());
        for (std::size_t i = 0; i < c.kraus.size(); ++i)
            CHECK((back.kraus[i] - c.kraus[i]).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("unknown kind") {
        CHECK_THROWS_AS(io::channel_from_json(io::json{{"kind", "squeeze"}}),
                        ParseError);
    }
}

TEST_CASE("fixture files match their inline constructions") {
    const DensityMatrix gap = io::load_state(fixture("qutrit_gap.json"));
    CHECK((gap.matrix() - verify::qutrit_gap_state().matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-15);

    const DensityMatrix mix = io::load_state(fixture("plus_bell_mix_p04.json"));
    CHECK((mix.matrix() - verify::plus_bell_mix(0.4).matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-15);

    const DensityMatrix plus = io::load_state(fixture("plus.json"));
    CHECK(plus(0, 1).real() == 0.5);

    const Channel dep = io::load_channel(fixture("chan_depolarizing_p05.json"));
    REQUIRE(dep.spec.has_value());
    CHECK(dep.spec->kind == ChannelKind::depolarizing);
    CHECK(dep.spec->p == 0.5);

    const Channel raw = io::load_channel(fixture("chan_raw_kraus.json"));
    const Channel bf = make_channel(ChannelSpec::bit_flip(0.3));
    REQUIRE(raw.kraus.size() == bf.kraus.size());
    for (std::size_t i = 0; i < raw.kraus.size(); ++i)
        CHECK((raw.kraus[i] - bf.kraus[i]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("missing and malformed files raise ParseError") {
    CHECK_THROWS_AS(io::load_state("/definitely/not/here.json"), ParseError);
    CHECK_THROWS_AS(io::load_channel("/definitely/not/here.json"), ParseError);
}

TEST_CASE("significant-digit formatting") {
    CHECK(io::format_sig(0.7714778207990447, 9) == "0.771477821");
    CHECK(io::format_sig(0.5, 3) == "0.5");
    CHECK(io::format_sig(1.0, 9) == "1");
    CHECK(io::format_sig(1234567.0, 3) == "1.23e+06");
    CHECK(io::format_sig(0.7714778207990447, 17) == "0.7714778207990447");
    CHECK(io::format_sig(1.0 / 3.0, 17) == "0.33333333333333331");
}
