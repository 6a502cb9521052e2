#include "coordsim/channel.hpp"

#include <cmath>
#include <set>

namespace coordsim {

int rateToSize(int n, double rate) {
  if (rate < 0.0) throw PreconditionError("negative rate");
  double v = std::exp2(static_cast<double>(n) * rate);
  // guard against 2^k landing a hair above the integer it represents
  int m = static_cast<int>(std::ceil(v - 1e-9));
  return m < 1 ? 1 : m;
}

Source::Source(JointPmf p) : pmf(std::move(p)) {
  if (pmf.axes().size() != 1 || pmf.axes()[0].name != kAxisS)
    throw AxisError("Source pmf must live on the single axis 'S'");
}

DMChannel::DMChannel(CondPmf k) : kernel(std::move(k)) {
  if (kernel.fromAxes().size() != 1 || kernel.fromAxes()[0].name != kAxisX ||
      kernel.toAxes().size() != 1 || kernel.toAxes()[0].name != kAxisY)
    throw AxisError("DMChannel kernel must map axis 'X' to axis 'Y'");
}

CommonRandomness::CommonRandomness(int n, double r0, const std::string& axis)
    : rate(r0), size(rateToSize(n, r0)), pmf(JointPmf::uniform({{axis, rateToSize(n, r0)}})) {}

namespace {

std::vector<Alphabet> replicas(const std::string& base, int n, int size) {
  std::vector<Alphabet> axes;
  for (int t = 1; t <= n; ++t) axes.push_back({replicaName(base, t), size});
  return axes;
}

std::set<std::string> names(const std::vector<Alphabet>& axes) {
  std::set<std::string> s;
  for (const auto& a : axes) s.insert(a.name);
  return s;
}

// n-fold power with replica axis names even at n = 1.
JointPmf blockPower(const JointPmf& p, int n, std::size_t budget) {
  if (n > 1) return iidPower(p, n, budget);
  JointPmf out = p;
  for (const auto& a : p.axes()) out = renameAxis(out, a.name, replicaName(a.name, 1));
  return out;
}

}  // namespace

Code::Code(int n_, double r0, CondPmf enc, CondPmf dec)
    : n(n_), R0(r0), encoder(std::move(enc)), decoder(std::move(dec)) {
  const int m0 = rateToSize(n, R0);
  auto expect = [&](const CondPmf& k, const std::string& in_base, const std::string& out_base,
                    const char* what) {
    auto from = names(k.fromAxes());
    std::set<std::string> want;
    for (int t = 1; t <= n; ++t) want.insert(replicaName(in_base, t));
    want.insert(kAxisC);
    if (from != want) throw AxisError(std::string(what) + ": unexpected input axes");
    for (const auto& a : k.fromAxes())
      if (a.name == kAxisC && a.size != m0)
        throw AxisError(std::string(what) + ": C size does not match ceil(2^{nR0})");
    std::set<std::string> out_want;
    for (int t = 1; t <= n; ++t) out_want.insert(replicaName(out_base, t));
    if (names(k.toAxes()) != out_want)
      throw AxisError(std::string(what) + ": unexpected output axes");
  };
  expect(encoder, kAxisS, kAxisX, "encoder");
  expect(decoder, kAxisY, kAxisSh, "decoder");
}

JointPmf inducedJoint(const Code& code, const Source& src, const DMChannel& ch,
                      std::size_t budget) {
  const int n = code.n;
  CommonRandomness cr(n, code.R0);
  JointPmf joint = productJoint(cr.pmf, blockPower(src.pmf, n, budget), budget);
  joint = chainCompose(joint, code.encoder, budget);
  for (int t = 1; t <= n; ++t) {
    CondPmf letter = ch.kernel.renamed({replicaName(kAxisX, t)}, {replicaName(kAxisY, t)});
    joint = chainCompose(joint, letter, budget);
  }
  joint = chainCompose(joint, code.decoder, budget);
  return joint;
}

double coordinationGap(const Code& code, const Source& src, const DMChannel& ch,
                       const JointPmf& target, std::size_t budget) {
  std::set<std::string> want = {kAxisS, kAxisX, kAxisY, kAxisSh};
  if (names(target.axes()) != want)
    throw AxisError("coordinationGap: target must live on axes S, X, Y, Sh");
  JointPmf induced = inducedJoint(code, src, ch, budget);
  std::set<std::string> keep;
  for (const auto& a : induced.axes())
    if (a.name != kAxisC) keep.insert(a.name);
  return tvDistance(marginalize(induced, keep), blockPower(target, code.n, budget));
}

Code copyCode(int n, double R0, int s_size, int y_size) {
  const int m0 = rateToSize(n, R0);
  auto build = [&](const std::string& in_base, int in_size, const std::string& out_base) {
    std::vector<Alphabet> from = replicas(in_base, n, in_size);
    from.push_back({kAxisC, m0});
    std::vector<Alphabet> to = replicas(out_base, n, in_size);
    // rows indexed over sorted from-axes; C is the fastest-varying axis only
    // if it sorts last, so build via explicit digit walk instead.
    std::vector<Alphabet> from_sorted = from;
    std::sort(from_sorted.begin(), from_sorted.end(),
              [](const Alphabet& a, const Alphabet& b) { return a.name < b.name; });
    std::vector<Alphabet> to_sorted = to;
    std::sort(to_sorted.begin(), to_sorted.end(),
              [](const Alphabet& a, const Alphabet& b) { return a.name < b.name; });
    std::size_t rows = 1, cols = 1;
    for (const auto& a : from_sorted) rows *= static_cast<std::size_t>(a.size);
    for (const auto& a : to_sorted) cols *= static_cast<std::size_t>(a.size);
    // to_sorted replicas appear in the same lexicographic order as the
    // matching from replicas, so the copied symbol index transfers directly.
    std::vector<double> k(rows * cols, 0.0);
    std::vector<int> digit(from_sorted.size(), 0);
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t col = 0;
      std::size_t stride = 1;
      for (std::size_t i = to_sorted.size(); i-- > 0;) {
        // find the from-digit with the matching replica suffix
        const std::string want = in_base + to_sorted[i].name.substr(out_base.size());
        for (std::size_t j = 0; j < from_sorted.size(); ++j)
          if (from_sorted[j].name == want)
            col += static_cast<std::size_t>(digit[j]) * stride;
        stride *= static_cast<std::size_t>(to_sorted[i].size);
      }
      k[r * cols + col] = 1.0;
      for (std::size_t i = from_sorted.size(); i-- > 0;) {
        ++digit[i];
        if (digit[i] < from_sorted[i].size) break;
        digit[i] = 0;
      }
    }
    return CondPmf(from_sorted, to_sorted, std::move(k));
  };
  return Code(n, R0, build(kAxisS, s_size, kAxisX), build(kAxisY, y_size, kAxisSh));
}

}  // namespace coordsim
