#include <array>
#include <random>

#include <doctest.h>

#include "learnsim/errors.hpp"
#include "learnsim/schedule.hpp"

using namespace learnsim;

namespace {

Schedule five_lessons(double Tu = 300.0, double Tp = 100.0) {
  const std::array<EffortSpec, 5> efforts{ConstantEffort{3}, ConstantEffort{3}, ConstantEffort{3},
                                          ConstantEffort{3}, ConstantEffort{3}};
  const std::array<double, 5> S{0.0, 0.0, 0.2, 0.3, 0.4};
  return uniform_day(5, Tu, Tp, efforts, S);
}

}  // namespace

TEST_CASE("uniform day layout") {
  const Schedule day = five_lessons();
  REQUIRE(day.size() == 9);
  CHECK(day.total_duration() == 1900.0);
  for (std::size_t i = 0; i < day.size(); ++i) CHECK(day[i].is_lesson() == (i % 2 == 0));
  CHECK(day[4].lesson().S == 0.2);
  CHECK(day[8].lesson().S == 0.4);

  const std::array<EffortSpec, 1> one{ConstantEffort{3}};
  const std::array<double, 1> s1{0.0};
  const Schedule single = uniform_day(1, 300.0, 100.0, one, s1);
  CHECK(single.size() == 1);
  CHECK(single.total_duration() == 300.0);

  const std::array<EffortSpec, 2> two{ConstantEffort{1}, RequirementEffort{4}};
  const std::array<double, 2> s2{0.0, 0.5};
  const Schedule pair = uniform_day(2, 10.0, 5.0, two, s2);
  CHECK(pair.size() == 3);
  CHECK(pair.total_duration() == 25.0);

  CHECK_THROWS_AS(uniform_day(2, 10.0, 5.0, one, s2), ValidationError);
  CHECK_THROWS_AS(uniform_day(0, 10.0, 5.0, {}, {}), ValidationError);
}

TEST_CASE("segment_at") {
  const Schedule day = five_lessons();
  auto pos = day.segment_at(0.0);
  CHECK(pos.index == 0);
  CHECK(pos.local_t == 0.0);
  pos = day.segment_at(300.0);
  CHECK(pos.index == 1);
  CHECK(pos.local_t == 0.0);
  pos = day.segment_at(450.0);
  CHECK(pos.index == 2);
  CHECK(pos.local_t == 50.0);
  CHECK(day.segment_at(1899.99).index == 8);
  CHECK_THROWS_AS(day.segment_at(1900.0), ValidationError);
  CHECK_THROWS_AS(day.segment_at(-1.0), ValidationError);

  SUBCASE("total and monotone") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1900.0);
    std::vector<double> ts(500);
    for (auto& t : ts) t = u(rng);
    std::sort(ts.begin(), ts.end());
    std::size_t prev = 0;
    for (double t : ts) {
      const auto p = day.segment_at(t);
      CHECK(p.index >= prev);
      CHECK(p.local_t >= 0.0);
      CHECK(p.local_t < day[p.index].duration);
      prev = p.index;
    }
  }
}

TEST_CASE("schedule validation") {
  CHECK(validate(five_lessons(), 0.01).empty());
  CHECK(validate(Schedule({Segment{Break{}, 0.015}}), 0.01).size() == 1);
  CHECK(validate(Schedule{}, 0.01).size() == 1);
  CHECK(validate(Schedule({Segment{Lesson{ConstantEffort{3}, 1.0}, 1.0}}), 0.01).size() == 1);
  CHECK(validate(Schedule({Segment{Lesson{ConstantEffort{0}, 0.0}, 1.0}}), 0.01).size() == 1);
  CHECK(validate(Schedule({Segment{Break{}, -2.0}}), 0.01).size() == 1);
  CHECK(validate(five_lessons(), 0.0).size() == 1);

  SUBCASE("uniform days pass for any dt dividing Tu and Tp") {
    for (double dt : {0.01, 0.02, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
      CHECK_MESSAGE(validate(five_lessons(), dt).empty(), "dt=" << dt);
    }
    CHECK(validate(five_lessons(30.0, 20.0), 0.1).empty());
    CHECK(validate(five_lessons(300.0, 20.0), 0.01).empty());
  }
}
