#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <ios>

#include "vpl/config.hpp"
#include "vpl/errors.hpp"

using namespace vpl;

TEST_CASE("defaults describe the reference fiber") {
  const RunConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.fiber.n2 == 3.5e-20);
  CHECK(c.fiber.length == 100.0);
  CHECK(c.fiber.area == 1e-10);
  CHECK(c.fiber.lambda0 == 0.5e-6);
  CHECK(c.fiber.intensity == 1e6);
  CHECK(c.grid_points == 2001);
  CHECK(c.kernel == KernelVariant::pv);
  CHECK(c.drive_nu() == doctest::Approx(4.39823e-5).epsilon(1e-5));
}

TEST_CASE("json round trip") {
  RunConfig c;
  c.fiber.intensity = 2.5e9;
  c.grid_points = 101;
  c.kernel = KernelVariant::paper;
  c.two_end_factor = true;
  c.nu = 1.25;
  c.oracle.modes = 80;
  c.oracle.transits = 1.0;
  c.format = OutputFormat::json;
  const RunConfig back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  CHECK(back.nu.value() == 1.25);
  CHECK(back.spectrum_options().two_ends);
  CHECK(back.drive_nu() == 1.25);

  // Output documents carry their configuration under "config".
  const nlohmann::json wrapped{{"config", config_to_json(c)}, {"rows", nlohmann::json::array()}};
  CHECK(config_to_json(config_from_json(wrapped)) == config_to_json(c));
}

TEST_CASE("partial documents keep defaults") {
  const RunConfig c = config_from_json(nlohmann::json{{"L", 50.0}, {"kernel", "paper"}});
  CHECK(c.fiber.length == 50.0);
  CHECK(c.fiber.n2 == 3.5e-20);
  CHECK(c.kernel == KernelVariant::paper);
  CHECK_FALSE(c.nu.has_value());
}

TEST_CASE("config rejections") {
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"length", 5.0}}), ValidationError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"L", "long"}}), ValidationError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"kernel", "exact"}}), ValidationError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"format", "xml"}}), ValidationError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), ValidationError);

  RunConfig c;
  c.grid_points = 2000;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = RunConfig{};
  c.fiber.area = 0.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = RunConfig{};
  c.denominator_floor = 0.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = RunConfig{};
  c.nu = -1.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("config files") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto good = dir / "vpl_config_good.json";
  const auto bad = dir / "vpl_config_bad.json";
  std::ofstream(good) << R"({"I": 2e6, "grid_points": 11})";
  std::ofstream(bad) << R"({"I": 2e6,)";
  const RunConfig c = load_config(good);
  CHECK(c.fiber.intensity == 2e6);
  CHECK(c.grid_points == 11);
  CHECK_THROWS_AS(load_config(bad), ValidationError);
  CHECK_THROWS_AS(load_config(dir / "vpl_config_missing.json"), std::ios_base::failure);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
}

TEST_CASE("oracle settings build the mode system") {
  OracleSettings o;
  o.modes = 100;
  o.transits = 2.0;
  const ModeSystem s = o.system(0.05);
  CHECK(s.mode_count == 100);
  CHECK(s.drive_nu() == doctest::Approx(0.05));
  CHECK(s.total_time == doctest::Approx(2.0 * s.transit_time()));
}
