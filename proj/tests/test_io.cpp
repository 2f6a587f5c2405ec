#include <doctest.h>

#include <cstdio>

#include "orbitcap/io.hpp"

using namespace orbitcap;

TEST_CASE("point json round trip") {
  RandomStream rng(71);
  orbit::OrbitPoint p = orbit::random_point(2, rng);
  nlohmann::json j = io::point_to_json(p);
  CHECK(j.contains("line"));
  CHECK(j.contains("matrix"));  // writers emit both
  orbit::OrbitPoint q = io::point_from_json(j);
  CHECK((p.matrix - q.matrix).norm() < 1e-14);

  nlohmann::json noline = {{"n", 2}, {"matrix", j.at("matrix")}};
  CHECK_THROWS_AS(io::point_from_json(noline), std::invalid_argument);  // readers require line
}

TEST_CASE("pair json round trip") {
  RandomStream rng(72);
  orbit::TangentPair p = orbit::random_disc_pair(2, rng, 0.7);
  orbit::TangentPair q = io::pair_from_json(io::pair_to_json(p));
  CHECK((p.base.matrix - q.base.matrix).norm() < 1e-14);
  CHECK((p.vec.m - q.vec.m).norm() < 1e-14);
  CHECK(q.radius_bound == p.radius_bound);
}

TEST_CASE("report serialization") {
  capacity::CapacityReport rep;
  rep.space = "CP";
  rep.n = 2;
  rep.s = 0.5;
  rep.lower = 0.6;
  rep.upper = 0.618;
  rep.l_unit = 6.28;
  rep.eps = 0.018;
  rep.diagnostics["gap"] = 0.018;
  std::string js = io::reports_to_json({rep});
  auto parsed = nlohmann::json::parse(js);
  CHECK(parsed.at(0).at("space") == "CP");
  CHECK(parsed.at(0).at("diagnostics").at("gap") == doctest::Approx(0.018));
  std::string csv = io::reports_to_csv({rep});
  CHECK(csv.rfind("space,n,s,lower,upper,l_unit,eps\n", 0) == 0);
  CHECK(csv.find("CP,2,") != std::string::npos);
}

TEST_CASE("file io and svg") {
  io::write_file("io_test.txt", "hello\n");
  CHECK(io::read_file("io_test.txt") == "hello\n");
  std::remove("io_test.txt");

  std::string svg = io::svg_curve_plot({0, 1, 2}, {{1, 2, 3}, {3, 2, 1}}, {"a", "b"}, "t");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polyline") != std::string::npos);
}
