#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "szd/errors.hpp"
#include "szd/report.hpp"

using namespace szd;
using doctest::Approx;

TEST_CASE("target parsing") {
  CHECK(parse_target("x2e2x")(1.0) == Approx(std::exp(2.0)));
  CHECK(parse_target("negx3e5x")(1.0) == Approx(-std::exp(-5.0)));
  CHECK(parse_target("one")(3.0) == 1.0);
  CHECK(parse_target("t")(3.0) == 3.0);
  CHECK(parse_target("t2")(3.0) == 9.0);
  CHECK(parse_target("expneg")(1.0) == Approx(std::exp(-1.0)));
  CHECK(parse_target("abs1")(0.25) == 0.75);
  CHECK_FALSE(parse_target("abs1").has_exact_integrals());
  const auto g = parse_target("ep:2,1,0.5;-1,0,0");
  CHECK(g(2.0) == Approx(4.0 * std::exp(1.0) - 1.0));
  CHECK(g.growth_rate() == 0.5);
  CHECK_THROWS_AS(parse_target("sin"), DomainError);
  CHECK_THROWS_AS(parse_target("ep:1,2"), DomainError);
  CHECK_THROWS_AS(parse_target("ep:1,x,2"), DomainError);
}

TEST_CASE("rule parsing") {
  CHECK(parse_rule("n")(5) == 5.0);
  CHECK(parse_rule("n1.5")(100) == Approx(1000.0));
  CHECK(parse_rule("n2")(10) == 100.0);
  CHECK(parse_rule("n^3")(2) == Approx(8.0));
  CHECK(parse_rule("explicit:15,35,50")(3) == 50.0);
  CHECK(reference_table_for(parse_rule("n")) == 1);
  CHECK(reference_table_for(parse_rule("n1.5")) == 2);
  CHECK(reference_table_for(parse_rule("n2")) == 3);
  CHECK_FALSE(reference_table_for(parse_rule("n3")).has_value());
  CHECK_THROWS_AS(parse_rule("m"), DomainError);
  CHECK_THROWS_AS(parse_rule("explicit:3,2"), DomainError);
}

TEST_CASE("error table cells") {
  const auto g = parse_target("x2e2x");
  const std::vector<double> xs = {0.1, 1.0, 2.5};
  const std::vector<long> ns = {10, 100};
  const auto t1 = make_error_table(g, parse_rule("n"), xs, ns);
  const auto t2 = make_error_table(g, parse_rule("n1.5"), xs, ns);
  const auto t3 = make_error_table(g, parse_rule("n2"), xs, ns);
  CHECK(t1.at(1, 1).abs_error == Approx(1.46137).epsilon(5e-6));
  CHECK(t2.at(0, 1).abs_error == Approx(0.000622967).epsilon(5e-6));
  CHECK(t3.at(2, 0).abs_error == Approx(226.689).epsilon(5e-6));
  CHECK(t3.at(2, 0).abs_error == Approx(t1.at(2, 1).abs_error).epsilon(1e-10));
  for (const auto* t : {&t1, &t2, &t3}) {
    for (const auto& c : t->cells) {
      CHECK(c.ok());
      CHECK(c.abs_error == std::fabs(c.operator_value - c.g_value));
      CHECK(std::isfinite(c.abs_error));
    }
    CHECK(t->at(0, 0).u_n < t->at(0, 1).u_n);
  }
}

TEST_CASE("divergent cells are reported, not thrown") {
  const std::vector<double> xs = {1.0};
  const std::vector<long> ns = {1, 2, 3};
  const auto t = make_error_table(parse_target("x2e2x"), parse_rule("n"), xs, ns);
  CHECK_FALSE(t.at(0, 0).ok());
  CHECK_FALSE(t.at(0, 1).ok());
  CHECK(t.at(0, 2).ok());
  std::ostringstream os;
  write_csv(os, t);
  CHECK(os.str().find("divergent") != std::string::npos);
}

TEST_CASE("output is deterministic and ordered") {
  const auto g = parse_target("x2e2x");
  std::ostringstream a, b;
  write_csv(a, make_error_table(g, parse_rule("n"), kDefaultXs, kDefaultNs, TailEpsilon{}, {}, 1));
  write_csv(b, make_error_table(g, parse_rule("n"), kDefaultXs, kDefaultNs, TailEpsilon{}, {}, 8));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("x,n,u_n,operator_value,g_value,abs_error\n", 0) == 0);
  CHECK(a.str().find("\n1,100,100,") != std::string::npos);

  std::ostringstream p;
  write_pretty(p, make_error_table(g, parse_rule("n"), std::vector<double>{1.0}, std::vector<long>{100}));
  CHECK(p.str().find("1.46137") != std::string::npos);
}

TEST_CASE("reference comparison") {
  CHECK(reference_cells().size() == 147);
  const auto t = make_error_table(parse_target("x2e2x"), parse_rule("n"), std::vector<double>{1.0, 2.5},
                                  std::vector<long>{100, 1000});
  const auto cmp = compare_with_reference(t, 1);
  REQUIRE(cmp.size() == 4);
  for (const auto& c : cmp) {
    CHECK(c.passed);
    CHECK(c.rel_error <= 1e-4);
  }
}

TEST_CASE("curves") {
  const auto g = parse_target("negx3e5x");
  std::vector<double> grid;
  for (int i = 0; i <= 25; ++i) grid.push_back(0.1 * i);
  const std::vector<double> us = {15.0, 35.0, 50.0};
  const auto curves = make_curves(g, us, grid);
  REQUIRE(curves.size() == 4);
  double prev = 1e300;
  for (int k = 0; k < 3; ++k) {
    double dev = 0.0;
    for (const auto& [x, v] : curves[static_cast<std::size_t>(k)].points) dev = std::max(dev, std::fabs(v - g(x)));
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(curves.back().label == "negx3e5x");

  const std::vector<long> Js = {15, 35, 50};
  const auto cut = make_curves(g, us, grid, std::span<const long>(Js));
  REQUIRE(cut.size() == 7);
  CHECK(cut[3].truncation_J == 15);
  const double far_full = cut[2].points.back().second;
  const double far_cut = cut[5].points.back().second;
  CHECK(std::fabs(far_full - far_cut) > 1e-5);

  for (const auto& c : make_curves(parse_target("one"), std::vector<double>{7.0, 100.0}, grid))
    for (const auto& [x, v] : c.points) CHECK(v == Approx(1.0).epsilon(1e-12));

  const std::vector<double> bad = {0.0, 1.0, 1.0};
  CHECK_THROWS_AS(make_curves(g, us, bad), DomainError);
  const std::vector<long> short_js = {15};
  CHECK_THROWS_AS(make_curves(g, us, grid, std::span<const long>(short_js)), DomainError);

  std::ostringstream os;
  write_curves_csv(os, cut);
  CHECK(os.str().rfind("label,u,J,x,value\n", 0) == 0);
}

TEST_CASE("verification suite") {
  const auto r = run_verification_suite();
  for (const auto& c : r.checks) {
    CAPTURE(c.name);
    CHECK(c.passed);
  }
  CHECK(r.all_passed());

  VerificationConfig cfg;
  cfg.recurrence = RecurrenceForm::AsPrinted;
  const auto bad = run_verification_suite(cfg);
  CHECK_FALSE(bad.all_passed());
  bool found = false;
  for (const auto& c : bad.checks)
    if (c.name.find("recurrence") != std::string::npos) {
      found = true;
      CHECK_FALSE(c.passed);
      CHECK(c.detail == "first mismatch at m=1");
    }
  CHECK(found);

  std::ostringstream os;
  write_report(os, r);
  CHECK(os.str().find("PASS") != std::string::npos);
  CHECK(os.str().find("FAIL") == std::string::npos);
}
