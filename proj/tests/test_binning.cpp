#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "coordsim/binning.hpp"
#include "coordsim/channel.hpp"
#include "coordsim/prob.hpp"
#include "doctest.h"

using namespace coordsim;

namespace {

// Doubly symmetric binary source: uniform U, Y = U flipped w.p. p.
JointPmf dsbs(double p) {
  return chainCompose(JointPmf::bernoulli("U", 0.5), CondPmf::bsc("U", "Y", p));
}

// Exact null distribution of the chi-square occupancy statistic for N balls
// in M equiprobable bins, as a sorted list of (stat, prob). Oracle for the
// occupancy test; enumerates all compositions.
struct ChiSqNull {
  std::vector<std::pair<double, double>> atoms;  // (stat, prob), sorted by stat
  std::vector<double> tail;                      // tail[i] = P(stat >= atoms[i])

  ChiSqNull(int N, int M) {
    REQUIRE(M == 4);  // enumeration below is specialized to four bins
    const double logM = std::log(static_cast<double>(M));
    const double e = static_cast<double>(N) / M;
    std::vector<double> lg(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i) lg[static_cast<std::size_t>(i)] = std::lgamma(i + 1.0);
    const double logNfact = lg[static_cast<std::size_t>(N)];
    for (int n1 = 0; n1 <= N; ++n1)
      for (int n2 = 0; n2 + n1 <= N; ++n2)
        for (int n3 = 0; n3 + n2 + n1 <= N; ++n3) {
          int n4 = N - n1 - n2 - n3;
          double logp = logNfact - lg[n1] - lg[n2] - lg[n3] - lg[n4] - N * logM;
          double stat = (n1 - e) * (n1 - e) / e + (n2 - e) * (n2 - e) / e +
                        (n3 - e) * (n3 - e) / e + (n4 - e) * (n4 - e) / e;
          atoms.emplace_back(stat, std::exp(logp));
        }
    std::sort(atoms.begin(), atoms.end());
    tail.resize(atoms.size());
    double acc = 0.0;
    for (std::size_t i = atoms.size(); i-- > 0;) {
      acc += atoms[i].second;
      tail[i] = acc;
    }
  }

  double pValue(double observed) const {
    // P(stat >= observed), with slack for float ties
    auto it = std::lower_bound(atoms.begin(), atoms.end(),
                               std::make_pair(observed - 1e-9, 0.0));
    if (it == atoms.end()) return 0.0;
    return tail[static_cast<std::size_t>(it - atoms.begin())];
  }
};

double chiSqStat(const std::vector<std::uint32_t>& phi, int bins) {
  std::vector<int> counts(static_cast<std::size_t>(bins), 0);
  for (auto v : phi) counts[v]++;
  double e = static_cast<double>(phi.size()) / bins;
  double stat = 0.0;
  for (int c : counts) stat += (c - e) * (c - e) / e;
  return stat;
}

}  // namespace

TEST_CASE("binning determinism and ranges") {
  auto a = sampleBinning(6, 0.4, 0.3, 2, 1234);
  auto b = sampleBinning(6, 0.4, 0.3, 2, 1234);
  CHECK(a.phi1 == b.phi1);
  CHECK(a.phi2 == b.phi2);
  CHECK(a.M0 == rateToSize(6, 0.4));
  auto c = sampleBinning(6, 0.4, 0.3, 2, 1235);
  CHECK(a.phi1 != c.phi1);

  // R0 = 0 gives a single bin: phi1 constant
  auto z = sampleBinning(5, 0.0, 0.5, 2, 7);
  for (auto v : z.phi1) CHECK(v == 0);

  // json round-trip
  auto back = binningFromJson(toJson(a));
  CHECK(back.phi1 == a.phi1);
  CHECK(back.phi2 == a.phi2);
  CHECK(back.seed == a.seed);
}

TEST_CASE("bin occupancy is uniform: exact multinomial chi-square oracle") {
  // 256 sequences into 4 bins; every p-value over 100 seeds clears 0.001
  ChiSqNull null(256, 4);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto b = sampleBinning(8, 0.25, 0.25, 2, seed);
    REQUIRE(b.M0 == 4);
    REQUIRE(b.M1 == 4);
    CHECK(null.pValue(chiSqStat(b.phi1, 4)) > 0.001);
    CHECK(null.pValue(chiSqStat(b.phi2, 4)) > 0.001);
  }
}

TEST_CASE("swDecode trivial cases") {
  // |U| = 1: the unique sequence always decodes
  auto ref1 = JointPmf({{"Un", 1}, {"Yn", 2}}, {0.5, 0.5});
  SWDecoder dec1(ref1, sampleBinning(1, 0.5, 0.5, 1, 3), 2);
  CHECK(dec1.decode(0, 0, 1).u == 0);
  CHECK(swErrorProb(dec1) == 0.0);

  // singleton bin intersection decodes to that sequence regardless of y
  BinningPair b;
  b.n = 1;
  b.usize = 4;
  b.M0 = 4;
  b.M1 = 1;
  b.phi1 = {0, 1, 2, 3};
  b.phi2 = {0, 0, 0, 0};
  auto ref = JointPmf::uniform({{"Un", 4}, {"Yn", 4}});
  SWDecoder dec(ref, b, 4);
  for (int c = 0; c < 4; ++c)
    for (std::size_t y = 0; y < 4; ++y) CHECK(dec.decode(c, 0, y).u == static_cast<std::size_t>(c));
}

TEST_CASE("empty bin intersection is flagged and falls back to sequence 0") {
  BinningPair b;
  b.n = 1;
  b.usize = 2;
  b.M0 = 2;
  b.M1 = 2;
  b.phi1 = {0, 0};
  b.phi2 = {0, 1};
  SWDecoder dec(JointPmf::uniform({{"Un", 2}, {"Yn", 2}}), b, 2);
  CHECK(dec.emptyIntersections() == 2);  // pairs (1,0) and (1,1)
  auto d = dec.decode(1, 0, 0);
  CHECK(d.empty_intersection);
  CHECK(d.u == 0);
  CHECK_FALSE(dec.decode(0, 1, 1).empty_intersection);
}

TEST_CASE("noiseless side information decodes perfectly") {
  // Y = U exactly: MAP inside any bin holding the true u must return it
  auto uy = chainCompose(JointPmf::bernoulli("U", 0.5), CondPmf::identity({"U", 2}, "Y"));
  auto sweep = swErrorOverSeeds(uy, 5, 0.2, 0.2, {1, 2, 3});
  for (double e : sweep.per_seed) CHECK(e == 0.0);
}

TEST_CASE("injective joint binning has zero error") {
  // M0 * M1 >= |U|^n and an injective pair realized: error 0 by construction
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto b = sampleBinning(3, 2.0 / 3.0, 2.0 / 3.0, 2, seed);  // 4 x 4 = 16 pairs, 8 seqs
    std::vector<int> pairs;
    for (std::size_t u = 0; u < b.sequences(); ++u) pairs.push_back(b.pairIndex(u));
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) continue;
    auto ref = [&] {
      auto uy = dsbs(0.3);
      auto p = iidPower(uy, 3);
      auto g = groupAxes(p, {"U1", "U2", "U3"}, "Un");
      return groupAxes(g, {"Y1", "Y2", "Y3"}, "Yn");
    }();
    SWDecoder dec(ref, b, 2);
    CHECK(swErrorProb(dec) == 0.0);
    return;  // one injective instance suffices
  }
  FAIL("no injective binning found in 200 seeds");
}

TEST_CASE("higher rate sum lowers SW error at fixed n") {
  // crossover 0.1, n = 8: rate sum 0.8 beats rate sum 0.5, averaged
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 50; ++s) seeds.push_back(s);
  auto high = swErrorOverSeeds(dsbs(0.1), 8, 0.4, 0.4, seeds);
  auto low = swErrorOverSeeds(dsbs(0.1), 8, 0.25, 0.25, seeds);
  CHECK(high.mean < low.mean);
}

TEST_CASE("SW error trend in n at rate sum above H(U|Y)") {
  // reduced version of the acceptance run: 10 seeds, endpoints n = 4 and 10
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  auto at4 = swErrorOverSeeds(dsbs(0.1), 4, 0.4, 0.4, seeds);
  auto at10 = swErrorOverSeeds(dsbs(0.1), 10, 0.4, 0.4, seeds);
  CHECK(at10.mean < at4.mean);
}

TEST_CASE("osrb gap basics") {
  auto joint = productJoint(JointPmf::bernoulli("A", 0.5), JointPmf::bernoulli("B", 0.5));
  // R = 0: a single bin, K is constant, gap exactly 0
  auto r0 = osrbGap(joint, {"B"}, {"A"}, 4, 0.0, {1, 2});
  for (double g : r0.per_seed) CHECK(g == 0.0);

  // deterministic B given A with R > 0: K is a function of A^n, gap large
  auto det = chainCompose(JointPmf::bernoulli("A", 0.5), CondPmf::identity({"A", 2}, "B"));
  auto rd = osrbGap(det, {"B"}, {"A"}, 4, 0.5, {1, 2, 3});
  CHECK(rd.mean > 0.1);  // recorded: far from uniform-independent

  CHECK_THROWS_AS(osrbGap(joint, {"B"}, {"A"}, 2, 0.5, {}), PreconditionError);
}

TEST_CASE("osrb gap shrinks with n below H(B|A)") {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  const double rate = 0.5 * binaryEntropy(0.1);
  auto j = [&] {
    auto d = dsbs(0.1);
    return renameAxis(renameAxis(d, "U", "A"), "Y", "B");
  }();
  auto at5 = osrbGap(j, {"B"}, {"A"}, 5, rate, seeds);
  auto at10 = osrbGap(j, {"B"}, {"A"}, 10, rate, seeds);
  CHECK(at10.mean < at5.mean);
}

TEST_CASE("intersectBinningCheck") {
  CHECK(intersectBinningCheck({0.0, 0.0}, {0.0, 0.0}, 0.1));
  CHECK_FALSE(intersectBinningCheck({0.0, 1.0}, {1.0, 0.0}, 0.1));
  CHECK_THROWS_AS(intersectBinningCheck({}, {}, 0.1), PreconditionError);
}
