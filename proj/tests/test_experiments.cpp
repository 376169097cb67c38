#include <array>
#include <vector>

#include <doctest.h>

#include "learnsim/errors.hpp"
#include "learnsim/experiments.hpp"

using namespace learnsim;

TEST_CASE("PR-1 replication config") {
  const SimConfig c = pr1_config();
  CHECK(c.validate().empty());
  CHECK(c.params.alpha == std::vector<double>{0.06, 0.002});
  CHECK(c.params.gamma == std::vector<double>{0.001, 5e-5});
  CHECK(c.schedule.size() == 9);
  CHECK(c.schedule.total_duration() == 1900.0);
  CHECK(c.dt == 0.01);

  const auto traj = replicate_pr1();
  CHECK(traj.rows.size() == 1901);
  CHECK(traj.rows.back().t == doctest::Approx(1900.0));

  SUBCASE("durable knowledge grows during lessons") {
    for (std::size_t i = 1; i < traj.rows.size(); ++i) {
      const auto& a = traj.rows[i - 1];
      const auto& b = traj.rows[i];
      if (a.segment == b.segment && c.schedule[b.segment].is_lesson()) CHECK(b.Z[1] >= a.Z[1]);
    }
  }

  SUBCASE("lesson-end workability falls through the day") {
    std::vector<double> ends;
    for (double t : {300.0, 700.0, 1100.0, 1500.0, 1900.0}) {
      for (const auto& row : traj.rows) {
        if (std::abs(row.t - t) < 1e-6) ends.push_back(row.r);
      }
    }
    REQUIRE(ends.size() == 5);
    for (std::size_t i = 1; i < ends.size(); ++i) CHECK(ends[i] < ends[i - 1]);
  }
}

TEST_CASE("break length study") {
  const SimConfig base = pr1_config();

  SUBCASE("longer breaks help") {
    const std::array<double, 3> tps{20.0, 60.0, 100.0};
    const auto study = break_length_study(base, tps);
    REQUIRE(study.scenarios.size() == 3);
    // Oracle terminal Z: 69.5038 (Tp=20), 83.8165 (60), 87.7288 (100).
    CHECK(study.scenarios[0].Z_total == doctest::Approx(69.50382362337166).epsilon(1e-9));
    CHECK(study.scenarios[1].Z_total == doctest::Approx(83.81646600318403).epsilon(1e-9));
    CHECK(study.scenarios[2].Z_total == doctest::Approx(87.7287612198972).epsilon(1e-9));
    CHECK(study.scenarios[0].Z_total <= study.scenarios[1].Z_total);
    CHECK(study.scenarios[1].Z_total <= study.scenarios[2].Z_total);
  }

  SUBCASE("single value equals a direct run") {
    const std::array<double, 1> tps{100.0};
    const auto study = break_length_study(base, tps, true);
    REQUIRE(study.scenarios.size() == 1);
    const auto direct = run(base);
    CHECK(study.scenarios[0].Z_total == direct.rows.back().Z_total);
    CHECK(study.scenarios[0].Pr == direct.rows.back().Pr);
    REQUIRE(study.scenarios[0].trajectory.has_value());
    CHECK(study.scenarios[0].trajectory->rows.size() == direct.rows.size());
  }

  SUBCASE("empty and invalid lists") {
    CHECK(break_length_study(base, {}).scenarios.empty());
    const std::array<double, 2> bad{100.0, -5.0};
    CHECK_THROWS_AS(break_length_study(base, bad), ValidationError);
    const std::array<double, 1> ragged{100.005};
    CHECK_THROWS_AS(break_length_study(base, ragged), ValidationError);
  }
}

TEST_CASE("parameter sweep") {
  const SimConfig base = pr1_config();

  SUBCASE("faster forgetting lowers terminal knowledge") {
    const std::array<double, 2> g1{0.001, 0.002};
    const auto study = parameter_sweep(base, "gamma1", g1);
    REQUIRE(study.scenarios.size() == 2);
    // Oracle: 87.7288 at gamma1 = 0.001, 59.8764 at 0.002.
    CHECK(study.scenarios[1].Z_total == doctest::Approx(59.87637014952534).epsilon(1e-9));
    CHECK(study.scenarios[1].Z_total < study.scenarios[0].Z_total);
  }

  SUBCASE("b = 0 reproduces the replication") {
    const std::array<double, 1> b{0.0};
    const auto study = parameter_sweep(base, "b", b);
    const auto direct = replicate_pr1();
    CHECK(study.scenarios[0].Z_total == direct.rows.back().Z_total);
    CHECK(study.scenarios[0].Pr == direct.rows.back().Pr);
  }

  SUBCASE("invariant violations become diagnostic rows") {
    const std::array<double, 3> g2{1e-5, 0.01, 2e-5};
    const auto study = parameter_sweep(base, "gamma2", g2);
    REQUIRE(study.scenarios.size() == 3);
    CHECK(study.scenarios[0].ok);
    CHECK_FALSE(study.scenarios[1].ok);
    CHECK(study.scenarios[1].diagnostic.find("strictly decreasing") != std::string::npos);
    CHECK(study.scenarios[2].ok);
  }

  SUBCASE("paths") {
    CHECK(parameter_sweep(base, "k1", {}).scenarios.empty());
    const std::array<double, 1> v{1.0};
    CHECK_THROWS_AS(parameter_sweep(base, "gamma9", v), ValidationError);
    CHECK_THROWS_AS(parameter_sweep(base, "gamma0", v), ValidationError);
    CHECK_THROWS_AS(parameter_sweep(base, "beta", v), ValidationError);
    for (const char* ok : {"b", "k1", "P0", "k2", "k3", "k4", "dt", "alpha1", "alpha2", "gamma1", "gamma2"}) {
      CHECK_MESSAGE(is_parameter_path(ok, base), ok);
    }
    CHECK(with_parameter(base, "dt", 0.02).dt == 0.02);
    CHECK(with_parameter(base, "alpha2", 0.003).params.alpha[1] == 0.003);
  }
}

TEST_CASE("constant requirement optimizer") {
  SimConfig base = pr1_config();

  SUBCASE("argmax of its own grid") {
    const auto best = optimize_constant_u(base, 1.0, 40.0, 40, Objective::TerminalZ);
    REQUIRE(best.evaluations.size() == 40);
    CHECK(best.evaluations.front().U == 1.0);
    CHECK(best.evaluations.back().U == 40.0);
    double top = best.evaluations.front().value;
    for (const auto& e : best.evaluations) top = std::max(top, e.value);
    CHECK(best.value == top);
    // Regression anchor from the independent grid oracle (requirement_grid.py).
    CHECK(best.U == 40.0);
    CHECK(best.value == doctest::Approx(39.677441130532394).epsilon(1e-9));
    CHECK(best.evaluations[0].value == doctest::Approx(0.9927278197422374).epsilon(1e-9));
    CHECK(best.evaluations[19].value == doctest::Approx(19.852910801808918).epsilon(1e-9));
  }

  SUBCASE("strength objective") {
    const auto best = optimize_constant_u(base, 1.0, 40.0, 40, Objective::TerminalPr);
    CHECK(best.U == 1.0);
    CHECK(best.value == doctest::Approx(0.848836364154874).epsilon(1e-9));
  }

  SUBCASE("two-point grid picks the better endpoint") {
    const auto best = optimize_constant_u(base, 10.0, 10.5, 2, Objective::TerminalZ);
    REQUIRE(best.evaluations.size() == 2);
    CHECK(best.U == 10.5);
  }

  SUBCASE("ties go to the smallest U") {
    // Knowledge starts above every grid U, so F = 0 and all runs coincide.
    SimConfig flat = base;
    flat.schedule = Schedule({Segment{Lesson{ConstantEffort{1.0}, 0.0}, 0.01}, Segment{Break{}, 10.0}});
    flat.initial = initial_state({1.0, 1.0}, 1.0);
    const auto best = optimize_constant_u(flat, 0.0, 0.5, 6, Objective::TerminalPr);
    for (const auto& e : best.evaluations) CHECK(e.value == best.evaluations.front().value);
    CHECK(best.U == 0.0);
  }

  SUBCASE("invalid ranges") {
    CHECK_THROWS_AS(optimize_constant_u(base, 5.0, 5.0, 3, Objective::TerminalZ), ValidationError);
    CHECK_THROWS_AS(optimize_constant_u(base, -1.0, 5.0, 3, Objective::TerminalZ), ValidationError);
    CHECK_THROWS_AS(optimize_constant_u(base, 1.0, 5.0, 1, Objective::TerminalZ), ValidationError);
  }
}

TEST_CASE("studies are repeatable") {
  const std::array<double, 2> tps{40.0, 80.0};
  const auto a = break_length_study(pr1_config(), tps);
  const auto b = break_length_study(pr1_config(), tps);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(a.scenarios[i].Z_total == b.scenarios[i].Z_total);
    CHECK(a.scenarios[i].Pr == b.scenarios[i].Pr);
    CHECK(a.scenarios[i].mean_lesson_r == b.scenarios[i].mean_lesson_r);
  }
}
