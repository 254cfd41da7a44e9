#include <doctest.h>

#include <nlohmann/json.hpp>

#include "biphoton/config.hpp"
#include "biphoton/errors.hpp"

using namespace biphoton;
using nlohmann::json;

TEST_CASE("unit suffixes convert to SI") {
  CHECK(parse_quantity(json("1 ps"), "time", "t") == doctest::Approx(1e-12));
  CHECK(parse_quantity(json("10 cm"), "length", "l") == doctest::Approx(0.10));
  CHECK(parse_quantity(json("500 ps^2/km"), "gvd", "b2") == doctest::Approx(50e-26));
  CHECK(parse_quantity(json("10 ps/km"), "slowness", "b1") == doctest::Approx(1e-11));
  CHECK(parse_quantity(json("0.5e12 rad/s"), "angular_frequency", "s") ==
        doctest::Approx(5e11));
  CHECK(parse_quantity(json("1 rad/ps"), "angular_frequency", "s") == doctest::Approx(1e12));
  CHECK(parse_quantity(json("2 mW"), "power", "p") == doctest::Approx(2e-3));
  CHECK(parse_quantity(json(0.25), "length", "l") == doctest::Approx(0.25));

  CHECK_THROWS_AS(parse_quantity(json("1 parsec"), "length", "l"), ConfigError);
  CHECK_THROWS_AS(parse_quantity(json("1"), "length", "l"), ConfigError);
  CHECK_THROWS_AS(parse_quantity(json("1 ps extra"), "time", "t"), ConfigError);
  CHECK_THROWS_AS(parse_quantity(json(true), "time", "t"), ConfigError);
}

TEST_CASE("preset config parses and resolves") {
  const json root = {{"scheme", "asymmetric"},
                     {"length", "10 m"},
                     {"effects", json::array({"npm"})},
                     {"seed", 7},
                     {"grid", {{"n", 512}, {"time_span", "400 ps"}}},
                     {"solver", {{"dz", "2 cm"}}}};
  const RunConfig config = parse_config(root);
  CHECK(config.scheme == SchemeKind::Asymmetric);
  CHECK(config.seed == 7);
  CHECK(config.effects.npm);
  CHECK_FALSE(config.effects.gvd);

  const ResolvedRun run = resolve(config);
  CHECK(run.grid.n == 512);
  CHECK(run.grid.time_span() == doctest::Approx(400e-12));
  CHECK(run.spec.solver.npm);
  CHECK(run.spec.solver.dz == doctest::Approx(0.02));
  CHECK(run.spec.wg.length == doctest::Approx(10.0));
  CHECK(run.calibrate);

  const json provenance = resolved_json(run);
  CHECK(provenance["scheme"] == "asymmetric");
  CHECK(provenance["waveguide"]["length_m"] == doctest::Approx(10.0));
  CHECK(provenance["solver"]["npm"] == true);
}

TEST_CASE("unknown keys are rejected with their path") {
  const json root = {{"scheme", "asymmetric"}, {"lenght", "10 m"}};
  CHECK_THROWS_WITH_AS(parse_config(root), "config: lenght: unknown key", ConfigError);

  const json nested = {{"scheme", "asymmetric"}, {"grid", {{"points", 512}}}};
  CHECK_THROWS_WITH_AS(parse_config(nested), "config: grid.points: unknown key",
                       ConfigError);
}

TEST_CASE("mode exclusivity and completeness") {
  CHECK_THROWS_AS(parse_config(json{{"length", "1 m"}}), ConfigError);

  const json both = {{"scheme", "collision"},
                     {"waveguide", {{"length", "1 m"}, {"gamma", "1e-3 1/W/m"}}}};
  CHECK_THROWS_AS(parse_config(both), ConfigError);

  const json explicit_ok = {
      {"waveguide",
       {{"length", "0.5 m"},
        {"beta1_i", "10 ps/km"},
        {"gamma", "2e-3 1/W/m"}}},
      {"pumps", {{"p", {{"peak_power", "5 W"}, {"sigma", "1 rad/ps"}}}}},
      {"grid", {{"n", 128}, {"time_span", "48 ps"}}}};
  const RunConfig config = parse_config(explicit_ok);
  CHECK_FALSE(config.scheme.has_value());
  const ResolvedRun run = resolve(config);
  CHECK(run.spec.wg.gamma == doctest::Approx(2e-3));
  CHECK(run.spec.pumps.q.peak_power == doctest::Approx(5.0));  // q defaults to p
  CHECK_FALSE(run.calibrate);  // no target_R
}

TEST_CASE("physical validation surfaces as ConfigError") {
  const json bad_power = {
      {"waveguide", {{"length", "0.5 m"}, {"gamma", "1e-3 1/W/m"}}},
      {"pumps", {{"p", {{"peak_power", "-1 W"}, {"sigma", "1 rad/ps"}}}}},
      {"grid", {{"n", 128}, {"time_span", "48 ps"}}}};
  CHECK_THROWS_AS(resolve(parse_config(bad_power)), ConfigError);

  const json bad_grid = {{"scheme", "collision"}, {"grid", {{"n", 100}}}};
  CHECK_THROWS_AS(resolve(parse_config(bad_grid)), ConfigError);

  const json df_without_model = {
      {"waveguide", {{"length", "0.5 m"}, {"gamma", "1e-3 1/W/m"}}},
      {"pumps", {{"p", {{"peak_power", "1 W"}, {"sigma", "1 rad/ps"}}}}},
      {"grid", {{"n", 128}, {"time_span", "48 ps"}}},
      {"effects", json::array({"df"})}};
  CHECK_THROWS_AS(resolve(parse_config(df_without_model)), ConfigError);
}

TEST_CASE("sweep, ensemble and validate blocks") {
  const json root = {{"scheme", "collision"},
                     {"sweep", {{"lengths", json::array({"0.2 m", "0.6 m", "1 m"})}}},
                     {"ensemble", {{"paths", 32}}},
                     {"validate", {{"regime", "no_gvd"}}}};
  const RunConfig config = parse_config(root);
  REQUIRE(config.sweep_lengths.size() == 3);
  CHECK(config.sweep_lengths[1] == doctest::Approx(0.6));
  CHECK(config.ensemble_paths == 32);
  CHECK(config.validate_regime == ValidationRegime::NoGvd);
}
