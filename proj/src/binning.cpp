#include "coordsim/binning.hpp"

#include <algorithm>
#include <cmath>

#include "coordsim/channel.hpp"
#include "coordsim/rng.hpp"

namespace coordsim {

BinningPair sampleBinning(int n, double R0, double Rtilde, int usize, std::uint64_t seed,
                          std::size_t budget) {
  if (n < 1 || usize < 1) throw PreconditionError("sampleBinning: n and |U| must be >= 1");
  double cells_d = std::pow(static_cast<double>(usize), n);
  if (cells_d > static_cast<double>(budget))
    throw CapacityError("sampleBinning", static_cast<std::size_t>(std::min(cells_d, 1e18)));
  BinningPair b;
  b.n = n;
  b.usize = usize;
  b.R0 = R0;
  b.Rtilde = Rtilde;
  b.M0 = rateToSize(n, R0);
  b.M1 = rateToSize(n, Rtilde);
  b.seed = seed;
  const auto cells = static_cast<std::size_t>(cells_d);
  b.phi1.resize(cells);
  b.phi2.resize(cells);
  std::mt19937_64 rng(deriveSeed(seed, 0xb1));
  for (auto& v : b.phi1) v = static_cast<std::uint32_t>(boundedUniform(rng, static_cast<std::uint64_t>(b.M0)));
  for (auto& v : b.phi2) v = static_cast<std::uint32_t>(boundedUniform(rng, static_cast<std::uint64_t>(b.M1)));
  return b;
}

nlohmann::json toJson(const BinningPair& b) {
  return {{"n", b.n},       {"usize", b.usize}, {"R0", b.R0},
          {"Rtilde", b.Rtilde}, {"M0", b.M0},   {"M1", b.M1},
          {"seed", b.seed}, {"phi1", b.phi1},   {"phi2", b.phi2}};
}

BinningPair binningFromJson(const nlohmann::json& j) {
  BinningPair b;
  b.n = j.at("n").get<int>();
  b.usize = j.at("usize").get<int>();
  b.R0 = j.at("R0").get<double>();
  b.Rtilde = j.at("Rtilde").get<double>();
  b.M0 = j.at("M0").get<int>();
  b.M1 = j.at("M1").get<int>();
  b.seed = j.at("seed").get<std::uint64_t>();
  b.phi1 = j.at("phi1").get<std::vector<std::uint32_t>>();
  b.phi2 = j.at("phi2").get<std::vector<std::uint32_t>>();
  if (b.phi1.size() != b.phi2.size()) throw ValidationError("binning arrays differ in length");
  for (auto v : b.phi1)
    if (v >= static_cast<std::uint32_t>(b.M0)) throw ValidationError("phi1 entry out of range");
  for (auto v : b.phi2)
    if (v >= static_cast<std::uint32_t>(b.M1)) throw ValidationError("phi2 entry out of range");
  return b;
}

SWDecoder::SWDecoder(JointPmf reference, BinningPair binning, int ysize, std::size_t budget)
    : reference_(std::move(reference)), binning_(std::move(binning)) {
  if (!reference_.hasAxis("Un") || !reference_.hasAxis("Yn") || reference_.axes().size() != 2)
    throw AxisError("SWDecoder reference must live on axes 'Un' and 'Yn'");
  u_cells_ = static_cast<std::size_t>(reference_.axes()[reference_.axisIndex("Un")].size);
  y_cells_ = static_cast<std::size_t>(reference_.axes()[reference_.axisIndex("Yn")].size);
  if (u_cells_ != binning_.sequences())
    throw AxisError("SWDecoder: binning length does not match |U|^n");
  double ycheck = std::pow(static_cast<double>(ysize), binning_.n);
  if (static_cast<std::size_t>(ycheck) != y_cells_)
    throw AxisError("SWDecoder: Yn size is not ysize^n");
  u_stride_ = reference_.strides()[reference_.axisIndex("Un")];
  y_stride_ = reference_.strides()[reference_.axisIndex("Yn")];

  const std::size_t pairs = static_cast<std::size_t>(binning_.M0) * static_cast<std::size_t>(binning_.M1);
  const std::size_t table_cells = pairs * y_cells_;
  if (table_cells > budget) throw CapacityError("SWDecoder table", table_cells);
  table_.assign(table_cells, 0);
  empty_.assign(pairs, 1);
  std::vector<double> best(table_cells, -1.0);
  const auto& w = reference_.weights();
  for (std::size_t u = 0; u < u_cells_; ++u) {
    const auto pair = static_cast<std::size_t>(binning_.pairIndex(u));
    empty_[pair] = 0;
    const std::size_t row = pair * y_cells_;
    for (std::size_t y = 0; y < y_cells_; ++y) {
      double mass = w[u * u_stride_ + y * y_stride_];
      // strict > keeps the smallest index among ties (u ascends)
      if (mass > best[row + y]) {
        best[row + y] = mass;
        table_[row + y] = static_cast<std::uint32_t>(u);
      }
    }
  }
  empty_pairs_ = static_cast<int>(std::count(empty_.begin(), empty_.end(), std::uint8_t{1}));
}

SWDecoder::Decode SWDecoder::decode(int c, int f, std::size_t y) const {
  if (c < 0 || c >= binning_.M0 || f < 0 || f >= binning_.M1 || y >= y_cells_)
    throw PreconditionError("SWDecoder::decode: index out of range");
  const auto pair = static_cast<std::size_t>(c) * static_cast<std::size_t>(binning_.M1) +
                    static_cast<std::size_t>(f);
  if (empty_[pair]) return {0, true};
  return {table_[pair * y_cells_ + y], false};
}

double SWDecoder::referenceMass(std::size_t u, std::size_t y) const {
  return reference_.weights()[u * u_stride_ + y * y_stride_];
}

double swErrorProb(const SWDecoder& dec) {
  const auto& b = dec.binning();
  KahanSum err;
  for (std::size_t u = 0; u < b.sequences(); ++u) {
    const int c = static_cast<int>(b.phi1[u]);
    const int f = static_cast<int>(b.phi2[u]);
    for (std::size_t y = 0; y < dec.ySequences(); ++y) {
      if (dec.decode(c, f, y).u != u) err.add(dec.referenceMass(u, y));
    }
  }
  return err.value();
}

namespace {

// n-fold product of a single-letter joint over (U, Y), fused into the
// two sequence axes "Un" and "Yn".
JointPmf sequenceJoint(const JointPmf& single_letter_uy, int n, std::size_t budget) {
  auto power = iidPower(single_letter_uy, n, budget);
  std::vector<std::string> u_parts, y_parts;
  if (n == 1) {
    power = renameAxis(renameAxis(power, "U", "U1"), "Y", "Y1");
  }
  for (int t = 1; t <= n; ++t) {
    u_parts.push_back(replicaName("U", t));
    y_parts.push_back(replicaName("Y", t));
  }
  auto g = groupAxes(power, u_parts, "Un");
  return groupAxes(g, y_parts, "Yn");
}

}  // namespace

SwErrorSweep swErrorOverSeeds(const JointPmf& single_letter_uy, int n, double R0,
                              double Rtilde, const std::vector<std::uint64_t>& seeds,
                              std::size_t budget) {
  if (!single_letter_uy.hasAxis("U") || !single_letter_uy.hasAxis("Y"))
    throw AxisError("swErrorOverSeeds: single-letter joint must live on axes 'U' and 'Y'");
  const int usize = single_letter_uy.axes()[single_letter_uy.axisIndex("U")].size;
  const int ysize = single_letter_uy.axes()[single_letter_uy.axisIndex("Y")].size;
  auto reference = sequenceJoint(single_letter_uy, n, budget);
  SwErrorSweep sweep;
  sweep.per_seed.resize(seeds.size());
  KahanSum total;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    auto b = sampleBinning(n, R0, Rtilde, usize, seeds[i], budget);
    SWDecoder dec(reference, std::move(b), ysize, budget);
    sweep.per_seed[i] = swErrorProb(dec);
    total.add(sweep.per_seed[i]);
  }
  sweep.mean = seeds.empty() ? 0.0 : total.value() / static_cast<double>(seeds.size());
  return sweep;
}

OsrbGapReport osrbGap(const JointPmf& single_letter, const std::vector<std::string>& b_axes,
                      const std::vector<std::string>& a_axes, int n, double rate,
                      const std::vector<std::uint64_t>& seeds, std::size_t budget) {
  if (rate < 0.0) throw PreconditionError("osrbGap: rate must be >= 0");
  if (seeds.empty()) throw PreconditionError("osrbGap: empty seed set");
  for (const auto& name : b_axes)
    if (!single_letter.hasAxis(name)) throw AxisError("osrbGap: unknown B axis '" + name + "'");
  for (const auto& name : a_axes)
    if (!single_letter.hasAxis(name)) throw AxisError("osrbGap: unknown A axis '" + name + "'");

  // fuse the n-fold product into sequence axes "An" and "Bn"
  auto power = iidPower(single_letter, n, budget);
  std::vector<std::string> a_parts, b_parts;
  for (int t = 1; t <= n; ++t) {
    for (const auto& name : a_axes) a_parts.push_back(n == 1 ? name : replicaName(name, t));
    for (const auto& name : b_axes) b_parts.push_back(n == 1 ? name : replicaName(name, t));
  }
  auto fused = groupAxes(groupAxes(power, a_parts, "An"), b_parts, "Bn");
  const std::size_t a_cells = static_cast<std::size_t>(fused.axes()[fused.axisIndex("An")].size);
  const std::size_t b_cells = static_cast<std::size_t>(fused.axes()[fused.axisIndex("Bn")].size);
  const std::size_t a_stride = fused.strides()[fused.axisIndex("An")];
  const std::size_t b_stride = fused.strides()[fused.axisIndex("Bn")];
  const int bins = rateToSize(n, rate);

  OsrbGapReport report;
  report.bins = bins;
  report.per_seed.resize(seeds.size());
  std::vector<double> joint_ak(a_cells * static_cast<std::size_t>(bins));
  KahanSum total;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    std::mt19937_64 rng(deriveSeed(seeds[i], 0xb2));
    std::vector<std::uint32_t> phi(b_cells);
    for (auto& v : phi) v = static_cast<std::uint32_t>(boundedUniform(rng, static_cast<std::uint64_t>(bins)));
    std::fill(joint_ak.begin(), joint_ak.end(), 0.0);
    for (std::size_t a = 0; a < a_cells; ++a)
      for (std::size_t b = 0; b < b_cells; ++b)
        joint_ak[a * static_cast<std::size_t>(bins) + phi[b]] +=
            fused.weights()[a * a_stride + b * b_stride];
    KahanSum tv;
    const double inv_bins = 1.0 / static_cast<double>(bins);
    for (std::size_t a = 0; a < a_cells; ++a) {
      double pa = 0.0;
      for (int k = 0; k < bins; ++k) pa += joint_ak[a * static_cast<std::size_t>(bins) + static_cast<std::size_t>(k)];
      for (int k = 0; k < bins; ++k)
        tv.add(std::abs(joint_ak[a * static_cast<std::size_t>(bins) + static_cast<std::size_t>(k)] -
                        inv_bins * pa));
    }
    report.per_seed[i] = 0.5 * tv.value();
    total.add(report.per_seed[i]);
  }
  report.mean = total.value() / static_cast<double>(seeds.size());
  return report;
}

bool intersectBinningCheck(const std::vector<double>& gaps1, const std::vector<double>& gaps2,
                           double eps) {
  if (gaps1.empty() || gaps1.size() != gaps2.size())
    throw PreconditionError("intersectBinningCheck: gap lists empty or mismatched");
  for (std::size_t i = 0; i < gaps1.size(); ++i)
    if (gaps1[i] < eps && gaps2[i] < eps) return true;
  return false;
}

}  // namespace coordsim
