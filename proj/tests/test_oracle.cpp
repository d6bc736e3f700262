#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "swiptrc/channel.hpp"
#include "swiptrc/oracle.hpp"
#include "swiptrc/protocols.hpp"

using namespace swiptrc;

namespace {

constexpr double kPi = 3.141592653589793;

ChannelState reference_channel() {
  const GainPair g = gains_from_geometry({4.0 / 3.0, kPi, 4.0});
  return {1.0, g.g_sr, g.g_rd, 1.0, 1.0, 2.0};
}

const SystemParams kRefSys{10.0, 1.0, 1e-3};

}  // namespace

TEST_CASE("grid maximizer keeps the smallest lambda on a plateau") {
  // c = 0 plateaus at b for all lambda >= b/(a+b); ties must resolve left
  RateCoefficients k{2.0, 1.0, 0.0, std::exp(1.0) - 1.0};
  const ProtocolSolution sol =
      oracle::grid_max_ideal(k, ReceivingMethod::InfoAccumulation,
                             {1e-3, false});
  CHECK(sol.rate == Catch::Approx(1.0).epsilon(1e-9));
  CHECK(*sol.lambda == Catch::Approx(1.0 / 3.0).margin(1.1e-3));
  // every grid point right of the edge has the same rate, so anything
  // further right than one step is a tie-break bug
  CHECK(*sol.lambda <= 1.0 / 3.0 + 1.1e-3);
}

TEST_CASE("grid maximizer is deterministic") {
  const ChannelState ch = reference_channel();
  const RateCoefficients k = coefficients(ch, kRefSys);
  const ProtocolSolution a =
      oracle::grid_max_ideal(k, ReceivingMethod::InfoAccumulation,
                             {1e-4, true});
  const ProtocolSolution b =
      oracle::grid_max_ideal(k, ReceivingMethod::InfoAccumulation,
                             {1e-4, true});
  CHECK(a.rate == b.rate);
  CHECK(*a.lambda == *b.lambda);
}

TEST_CASE("finer grids never lose rate") {
  const ChannelState ch = reference_channel();
  const RateCoefficients k = coefficients(ch, kRefSys);
  double prev = 0.0;
  for (double res : {1e-2, 1e-3, 1e-4}) {
    const double rate =
        oracle::grid_max_ideal(k, ReceivingMethod::InfoAccumulation,
                               {res, false}).rate;
    CHECK(rate >= prev - 1e-12);
    prev = rate;
  }
}

TEST_CASE("refinement never loses rate either") {
  const ChannelState ch = reference_channel();
  const RateCoefficients k = coefficients(ch, kRefSys);
  for (auto method : {ReceivingMethod::InfoAccumulation,
                      ReceivingMethod::EnergyAccumulation}) {
    const double raw =
        oracle::grid_max_ideal(k, method, {1e-3, false}).rate;
    const double refined =
        oracle::grid_max_ideal(k, method, {1e-3, true}).rate;
    CHECK(refined >= raw - 1e-15);
  }
}

TEST_CASE("arm equality bisection against direct substitution") {
  const ChannelState ch = reference_channel();
  const RateCoefficients k = coefficients(ch, kRefSys);
  for (auto method : {ReceivingMethod::InfoAccumulation,
                      ReceivingMethod::EnergyAccumulation}) {
    const double lam = oracle::bisect_arm_equality(method, k);
    REQUIRE(lam > 0.0);
    REQUIRE(lam < 1.0);
    const double t = lam / (1.0 - lam);
    const double lhs = k.a * t;
    const double rhs = method == ReceivingMethod::InfoAccumulation
                           ? k.b + std::log1p(k.c * t)
                           : std::log1p(k.m + k.c * t);
    CHECK(lhs == Catch::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("arm equality demands a feasible instance") {
  RateCoefficients bad{-1.0, 1.0, 2.0, std::exp(1.0) - 1.0};
  CHECK_THROWS_AS(
      oracle::bisect_arm_equality(ReceivingMethod::InfoAccumulation, bad),
      std::domain_error);
  RateCoefficients dead{1.0, 1.0, 0.0, std::exp(1.0) - 1.0};
  CHECK_THROWS_AS(
      oracle::bisect_arm_equality(ReceivingMethod::InfoAccumulation, dead),
      std::domain_error);
}

TEST_CASE("vanishing harvest shifts the crossing to the plateau edge") {
  // as c -> 0+ the arm equality tends to a*t = b, i.e. lambda -> b/(a+b)
  RateCoefficients k{2.0, 1.0, 1e-12, std::exp(1.0) - 1.0};
  const double lam =
      oracle::bisect_arm_equality(ReceivingMethod::InfoAccumulation, k);
  CHECK(lam == Catch::Approx(1.0 / 3.0).margin(1e-6));
}

TEST_CASE("time switching balance bisection basics") {
  const ChannelState ch = reference_channel();
  const RateCoefficients k = coefficients(ch, kRefSys);
  const auto a1 = oracle::bisect_ts_alpha1(
      0.3, ReceivingMethod::InfoAccumulation, k);
  REQUIRE(a1.has_value());
  CHECK(*a1 >= 0.0);
  CHECK(*a1 <= 0.7);
  // balance: a1*(a+b) = (a1+a2)*b + a3*(b + ln(1 + c*a2/a3))
  const double a2 = 1.0 - 0.3 - *a1;
  const double lhs = *a1 * (k.a + k.b);
  const double rhs =
      (*a1 + a2) * k.b + 0.3 * (k.b + std::log1p(k.c * a2 / 0.3));
  CHECK(lhs == Catch::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("time switching balance is infeasible off the simplex") {
  const ChannelState ch = reference_channel();
  const RateCoefficients k = coefficients(ch, kRefSys);
  CHECK_THROWS_AS(oracle::bisect_ts_alpha1(
                      0.0, ReceivingMethod::InfoAccumulation, k),
                  std::domain_error);
  CHECK_THROWS_AS(oracle::bisect_ts_alpha1(
                      1.0, ReceivingMethod::InfoAccumulation, k),
                  std::domain_error);
}

TEST_CASE("dispatcher covers all maximizer kinds") {
  const ChannelState ch = reference_channel();
  const auto method = ReceivingMethod::InfoAccumulation;
  const ProtocolSolution ideal =
      oracle::grid_max(ProtocolKind::Ideal, ch, kRefSys, method,
                       {1e-3, false});
  const ProtocolSolution ps = oracle::grid_max(
      ProtocolKind::PowerSplitting, ch, kRefSys, method, {5e-2, false});
  const ProtocolSolution ts = oracle::grid_max(
      ProtocolKind::TimeSwitching, ch, kRefSys, method, {5e-2, false});
  const ProtocolSolution direct = oracle::grid_max(
      ProtocolKind::DirectLink, ch, kRefSys, method, {1e-3, false});
  CHECK(ideal.kind == ProtocolKind::Ideal);
  CHECK(ps.kind == ProtocolKind::PowerSplitting);
  CHECK(ts.kind == ProtocolKind::TimeSwitching);
  CHECK(direct.kind == ProtocolKind::DirectLink);
  CHECK(direct.rate == Catch::Approx(std::log(6.0)).epsilon(1e-12));
  CHECK(ideal.rate >= ps.rate - 5e-2);
  CHECK(ps.rate >= direct.rate - 1e-9);
}
