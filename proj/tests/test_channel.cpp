#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "coordsim/channel.hpp"
#include "coordsim/prob.hpp"
#include "coordsim/rng.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace coordsim;

TEST_CASE("rate realizes as ceil(2^{nR})") {
  CHECK(rateToSize(4, 0.0) == 1);
  CHECK(rateToSize(4, 0.5) == 4);
  CHECK(rateToSize(4, 0.4) == 4);   // ceil(3.03)
  CHECK(rateToSize(10, 0.4) == 16);
  CHECK(rateToSize(3, 1.0) == 8);
}

TEST_CASE("identity copy code reproduces the source exactly") {
  Source src(renameAxis(JointPmf::bernoulli("X", 0.5), "X", "S"));
  DMChannel ch(CondPmf::identity({"X", 2}, "Y"));
  auto code = copyCode(1, 0.0, 2, 2);
  auto joint = inducedJoint(code, src, ch);
  // P(S = X = Y = Sh) = 1
  double diag = 0.0;
  for (int s = 0; s < 2; ++s) diag += joint.at({0, s, s, s, s});  // axes C,S1,Sh1,X1,Y1
  CHECK(diag == doctest::Approx(1.0).epsilon(1e-14));

  auto target = [&] {
    auto ps = renameAxis(JointPmf::bernoulli("X", 0.5), "X", "S");
    auto j = chainCompose(ps, CondPmf::identity({"S", 2}, "X"));
    j = chainCompose(j, CondPmf::identity({"X", 2}, "Y"));
    return chainCompose(j, CondPmf::identity({"Y", 2}, "Sh"));
  }();
  CHECK(coordinationGap(code, src, ch, target) < 1e-14);
}

TEST_CASE("n=1 BSC(0) copy code hits its own target") {
  Source src(renameAxis(JointPmf::bernoulli("X", 0.5), "X", "S"));
  DMChannel ch(CondPmf::bsc("X", "Y", 0.0));
  auto code = copyCode(1, 0.0, 2, 2);
  auto induced = inducedJoint(code, src, ch);
  auto marg = marginalize(induced, {"S1", "X1", "Y1", "Sh1"});
  // single-letterize the induced joint and use it as the target: gap 0
  auto target = renameAxis(renameAxis(renameAxis(renameAxis(marg, "S1", "S"), "X1", "X"),
                                      "Y1", "Y"),
                           "Sh1", "Sh");
  CHECK(coordinationGap(code, src, ch, target) < 1e-14);
}

TEST_CASE("source and randomness marginal is exact product") {
  std::mt19937_64 rng(5);
  Source src(renameAxis(JointPmf::bernoulli("X", 0.3), "X", "S"));
  DMChannel ch(CondPmf::bsc("X", "Y", 0.2));
  int n = 2;
  // random stochastic code
  auto enc = coordsim::testutil::randomKernel(
      rng, {{"S1", 2}, {"S2", 2}, {"C", 2}}, {{"X1", 2}, {"X2", 2}});
  auto dec = coordsim::testutil::randomKernel(
      rng, {{"Y1", 2}, {"Y2", 2}, {"C", 2}}, {{"Sh1", 2}, {"Sh2", 2}});
  Code code(n, 0.5, enc, dec);
  auto joint = inducedJoint(code, src, ch);
  auto sc = marginalize(joint, {"S1", "S2", "C"});
  auto expect = productJoint(iidPower(src.pmf, 2), JointPmf::uniform({{"C", 2}}));
  CHECK(tvDistance(sc, expect) < 1e-14);
}

TEST_CASE("channel conditional of induced joint factorizes per letter") {
  std::mt19937_64 rng(6);
  Source src(renameAxis(JointPmf::bernoulli("X", 0.4), "X", "S"));
  DMChannel ch(CondPmf::bsc("X", "Y", 0.15));
  int n = 2;
  auto enc = coordsim::testutil::randomKernel(
      rng, {{"S1", 2}, {"S2", 2}, {"C", 2}}, {{"X1", 2}, {"X2", 2}});
  auto dec = coordsim::testutil::randomKernel(
      rng, {{"Y1", 2}, {"Y2", 2}, {"C", 2}}, {{"Sh1", 2}, {"Sh2", 2}});
  Code code(n, 0.5, enc, dec);
  auto joint = inducedJoint(code, src, ch);
  auto cond = conditionalOf(joint, {"Y1", "Y2"}, {"X1", "X2"});
  // rows over (X1,X2) sorted; columns over (Y1,Y2)
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2)
      for (int y1 = 0; y1 < 2; ++y1)
        for (int y2 = 0; y2 < 2; ++y2) {
          double got = cond.at(static_cast<std::size_t>(x1 * 2 + x2),
                               static_cast<std::size_t>(y1 * 2 + y2));
          double want = ch.kernel.at(static_cast<std::size_t>(x1), static_cast<std::size_t>(y1)) *
                        ch.kernel.at(static_cast<std::size_t>(x2), static_cast<std::size_t>(y2));
          CHECK(std::abs(got - want) < 1e-12);
        }
}

TEST_CASE("copy code through a noisy channel: positive gap and Monte-Carlo agreement") {
  Source src(renameAxis(JointPmf::bernoulli("X", 0.5), "X", "S"));
  DMChannel ch(CondPmf::bsc("X", "Y", 0.1));
  int n = 2;
  auto code = copyCode(n, 0.0, 2, 2);

  // target: noiseless reconstruction Sh = S over the same channel
  auto target = [&] {
    auto j = chainCompose(renameAxis(JointPmf::bernoulli("X", 0.5), "X", "S"),
                          CondPmf::identity({"S", 2}, "X"));
    j = chainCompose(j, CondPmf::bsc("X", "Y", 0.1));
    return chainCompose(j, CondPmf::identity({"S", 2}, "Sh"));
  }();
  double gap = coordinationGap(code, src, ch, target);
  CHECK(gap > 0.01);

  // Monte-Carlo oracle: simulate the same code directly with raw bit draws
  auto induced = marginalize(inducedJoint(code, src, ch), {"S1", "S2", "X1", "X2",
                                                           "Y1", "Y2", "Sh1", "Sh2"});
  const int kSamples = 1000000;
  std::vector<double> counts(induced.cells(), 0.0);
  std::mt19937_64 rng(99);
  for (int i = 0; i < kSamples; ++i) {
    int s1 = uniform01(rng) < 0.5, s2 = uniform01(rng) < 0.5;
    int x1 = s1, x2 = s2;
    int y1 = x1 ^ (uniform01(rng) < 0.1), y2 = x2 ^ (uniform01(rng) < 0.1);
    int sh1 = y1, sh2 = y2;
    // axes sorted: S1,S2,Sh1,Sh2,X1,X2,Y1,Y2
    std::size_t idx = 0;
    for (int b : {s1, s2, sh1, sh2, x1, x2, y1, y2}) idx = idx * 2 + static_cast<std::size_t>(b);
    counts[idx] += 1.0;
  }
  for (std::size_t cell = 0; cell < induced.cells(); ++cell) {
    double p = induced.weights()[cell];
    double phat = counts[cell] / kSamples;
    double sigma = std::sqrt(std::max(p * (1.0 - p), 0.0) / kSamples);
    CHECK(std::abs(phat - p) <= 3.0 * sigma + 1.0 / kSamples);
  }
}
