#include "coordsim/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace coordsim {

bool operator==(const Alphabet& a, const Alphabet& b) {
  return a.name == b.name && a.size == b.size;
}

namespace {

std::size_t productOfSizes(const std::vector<Alphabet>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) {
    if (a.size < 1) throw AxisError("axis '" + a.name + "' has size < 1");
    n *= static_cast<std::size_t>(a.size);
  }
  return n;
}

void requireUniqueNames(const std::vector<Alphabet>& axes) {
  for (std::size_t i = 0; i < axes.size(); ++i)
    for (std::size_t j = i + 1; j < axes.size(); ++j)
      if (axes[i].name == axes[j].name)
        throw AxisError("duplicate axis name '" + axes[i].name + "'");
}

std::vector<std::size_t> rowMajorStrides(const std::vector<Alphabet>& axes) {
  std::vector<std::size_t> s(axes.size(), 1);
  for (std::size_t i = axes.size(); i-- > 1;)
    s[i - 1] = s[i] * static_cast<std::size_t>(axes[i].size);
  return s;
}

// Permute a row-major tensor from the axis order `old_axes` to `new_axes`
// (same set of axes).
std::vector<double> permuteTensor(const std::vector<Alphabet>& old_axes,
                                  const std::vector<double>& w,
                                  const std::vector<Alphabet>& new_axes) {
  const std::size_t rank = old_axes.size();
  auto old_strides = rowMajorStrides(old_axes);
  auto new_strides = rowMajorStrides(new_axes);
  // position of each new axis in the old order
  std::vector<std::size_t> src(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    auto it = std::find_if(old_axes.begin(), old_axes.end(),
                           [&](const Alphabet& a) { return a.name == new_axes[i].name; });
    src[i] = static_cast<std::size_t>(it - old_axes.begin());
  }
  std::vector<double> out(w.size());
  std::vector<int> digit(rank, 0);
  std::size_t old_index = 0;
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    out[cell] = w[old_index];
    // increment mixed-radix counter over the new order, tracking old_index
    for (std::size_t i = rank; i-- > 0;) {
      ++digit[i];
      old_index += old_strides[src[i]];
      if (digit[i] < new_axes[i].size) break;
      old_index -= static_cast<std::size_t>(digit[i]) * old_strides[src[i]];
      digit[i] = 0;
    }
  }
  return out;
}

bool sortedByName(const std::vector<Alphabet>& axes) {
  return std::is_sorted(axes.begin(), axes.end(),
                        [](const Alphabet& a, const Alphabet& b) { return a.name < b.name; });
}

std::vector<Alphabet> sortByName(std::vector<Alphabet> axes) {
  std::sort(axes.begin(), axes.end(),
            [](const Alphabet& a, const Alphabet& b) { return a.name < b.name; });
  return axes;
}

void checkMass(const std::vector<double>& w, double expected_rows = 1.0) {
  KahanSum sum;
  for (double x : w) {
    if (x < 0.0) throw ValidationError("negative weight " + std::to_string(x));
    if (!std::isfinite(x)) throw ValidationError("non-finite weight");
    sum.add(x);
  }
  if (std::abs(sum.value() - expected_rows) > kMassTol * std::max(1.0, expected_rows))
    throw ValidationError("mass sums to " + std::to_string(sum.value()) +
                          ", expected " + std::to_string(expected_rows));
}

}  // namespace

JointPmf::JointPmf(std::vector<Alphabet> axes, std::vector<double> weights) {
  requireUniqueNames(axes);
  const std::size_t cells = productOfSizes(axes);
  if (weights.size() != cells)
    throw AxisError("weight count " + std::to_string(weights.size()) +
                    " does not match axis product " + std::to_string(cells));
  checkMass(weights);
  if (sortedByName(axes)) {
    axes_ = std::move(axes);
    w_ = std::move(weights);
  } else {
    axes_ = sortByName(axes);
    w_ = permuteTensor(axes, weights, axes_);
  }
  strides_ = rowMajorStrides(axes_);
}

bool JointPmf::hasAxis(const std::string& name) const {
  for (const auto& a : axes_)
    if (a.name == name) return true;
  return false;
}

std::size_t JointPmf::axisIndex(const std::string& name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i].name == name) return i;
  throw AxisError("unknown axis '" + name + "'");
}

double JointPmf::at(const std::vector<int>& multi_index) const {
  if (multi_index.size() != axes_.size()) throw AxisError("multi-index rank mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (multi_index[i] < 0 || multi_index[i] >= axes_[i].size)
      throw AxisError("symbol out of range on axis '" + axes_[i].name + "'");
    idx += static_cast<std::size_t>(multi_index[i]) * strides_[i];
  }
  return w_[idx];
}

JointPmf JointPmf::uniform(std::vector<Alphabet> axes) {
  const std::size_t cells = productOfSizes(axes);
  return JointPmf(std::move(axes), std::vector<double>(cells, 1.0 / static_cast<double>(cells)));
}

JointPmf JointPmf::pointMass(std::vector<Alphabet> axes, const std::vector<int>& symbol) {
  const std::size_t cells = productOfSizes(axes);
  if (symbol.size() != axes.size()) throw AxisError("point-mass rank mismatch");
  auto strides = rowMajorStrides(axes);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (symbol[i] < 0 || symbol[i] >= axes[i].size)
      throw AxisError("point-mass symbol out of range");
    idx += static_cast<std::size_t>(symbol[i]) * strides[i];
  }
  std::vector<double> w(cells, 0.0);
  w[idx] = 1.0;
  return JointPmf(std::move(axes), std::move(w));
}

JointPmf JointPmf::bernoulli(const std::string& axis, double p1) {
  if (p1 < 0.0 || p1 > 1.0) throw ValidationError("bernoulli parameter out of [0,1]");
  return JointPmf({{axis, 2}}, {1.0 - p1, p1});
}

CondPmf::CondPmf(std::vector<Alphabet> from_axes, std::vector<Alphabet> to_axes,
                 std::vector<double> kernel) {
  requireUniqueNames(from_axes);
  requireUniqueNames(to_axes);
  for (const auto& f : from_axes)
    for (const auto& t : to_axes)
      if (f.name == t.name) throw AxisError("axis '" + f.name + "' on both kernel sides");
  from_cells_ = productOfSizes(from_axes);
  to_cells_ = productOfSizes(to_axes);
  if (kernel.size() != from_cells_ * to_cells_)
    throw AxisError("kernel size mismatch");
  // each row is a pmf
  for (std::size_t r = 0; r < from_cells_; ++r) {
    KahanSum row;
    for (std::size_t c = 0; c < to_cells_; ++c) {
      double x = kernel[r * to_cells_ + c];
      if (x < 0.0 || !std::isfinite(x))
        throw ValidationError("kernel row " + std::to_string(r) + " has invalid entry");
      row.add(x);
    }
    if (std::abs(row.value() - 1.0) > kMassTol)
      throw ValidationError("kernel row " + std::to_string(r) + " sums to " +
                            std::to_string(row.value()));
  }
  // canonicalize both sides
  if (!sortedByName(from_axes)) {
    // permute rows: treat the kernel as a tensor over from-axes with a
    // block of to_cells_ doubles per cell; permuting blocks reuses the
    // scalar permutation on an index tensor.
    auto sorted = sortByName(from_axes);
    std::vector<double> index(from_cells_);
    std::iota(index.begin(), index.end(), 0.0);
    auto perm = permuteTensor(from_axes, index, sorted);
    std::vector<double> k2(kernel.size());
    for (std::size_t r = 0; r < from_cells_; ++r) {
      auto src = static_cast<std::size_t>(perm[r]);
      std::copy_n(kernel.begin() + static_cast<std::ptrdiff_t>(src * to_cells_), to_cells_,
                  k2.begin() + static_cast<std::ptrdiff_t>(r * to_cells_));
    }
    kernel = std::move(k2);
    from_axes = std::move(sorted);
  }
  if (!sortedByName(to_axes)) {
    auto sorted = sortByName(to_axes);
    std::vector<double> k2(kernel.size());
    std::vector<double> row(to_cells_), prow;
    for (std::size_t r = 0; r < from_cells_; ++r) {
      std::copy_n(kernel.begin() + static_cast<std::ptrdiff_t>(r * to_cells_), to_cells_,
                  row.begin());
      prow = permuteTensor(to_axes, row, sorted);
      std::copy(prow.begin(), prow.end(),
                k2.begin() + static_cast<std::ptrdiff_t>(r * to_cells_));
    }
    kernel = std::move(k2);
    to_axes = std::move(sorted);
  }
  from_ = std::move(from_axes);
  to_ = std::move(to_axes);
  k_ = std::move(kernel);
}

CondPmf CondPmf::identity(const Alphabet& from, const std::string& to_name) {
  const auto n = static_cast<std::size_t>(from.size);
  std::vector<double> k(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) k[i * n + i] = 1.0;
  return CondPmf({from}, {{to_name, from.size}}, std::move(k));
}

CondPmf CondPmf::bsc(const std::string& from, const std::string& to, double p) {
  if (p < 0.0 || p > 1.0) throw ValidationError("bsc crossover out of [0,1]");
  return CondPmf({{from, 2}}, {{to, 2}}, {1.0 - p, p, p, 1.0 - p});
}

CondPmf CondPmf::constant(std::vector<Alphabet> from_axes, const JointPmf& row) {
  const std::size_t rows = productOfSizes(from_axes);
  std::vector<double> k;
  k.reserve(rows * row.cells());
  for (std::size_t r = 0; r < rows; ++r)
    k.insert(k.end(), row.weights().begin(), row.weights().end());
  return CondPmf(std::move(from_axes), row.axes(), std::move(k));
}

CondPmf CondPmf::renamed(const std::vector<std::string>& from_names,
                         const std::vector<std::string>& to_names) const {
  if (from_names.size() != from_.size() || to_names.size() != to_.size())
    throw AxisError("renamed: name count mismatch");
  std::vector<Alphabet> nf = from_, nt = to_;
  for (std::size_t i = 0; i < nf.size(); ++i) nf[i].name = from_names[i];
  for (std::size_t i = 0; i < nt.size(); ++i) nt[i].name = to_names[i];
  return CondPmf(std::move(nf), std::move(nt), k_);
}

// ---- tv / marginal / compose ------------------------------------------------

double tvDistance(const JointPmf& p, const JointPmf& q) {
  if (p.axes() != q.axes())
    throw AxisError("tvDistance: axis mismatch");
  KahanSum sum;
  const auto& pw = p.weights();
  const auto& qw = q.weights();
  for (std::size_t i = 0; i < pw.size(); ++i) sum.add(std::abs(pw[i] - qw[i]));
  return 0.5 * sum.value();
}

JointPmf marginalize(const JointPmf& p, const std::set<std::string>& keep) {
  for (const auto& name : keep)
    if (!p.hasAxis(name)) throw AxisError("marginalize: unknown axis '" + name + "'");
  std::vector<Alphabet> out_axes;
  std::vector<std::size_t> kept_pos;
  for (std::size_t i = 0; i < p.axes().size(); ++i)
    if (keep.count(p.axes()[i].name)) {
      out_axes.push_back(p.axes()[i]);
      kept_pos.push_back(i);
    }
  if (out_axes.size() == p.axes().size()) return p;
  auto out_strides = rowMajorStrides(out_axes);
  std::vector<double> out(productOfSizes(out_axes), 0.0);
  // walk the source tensor once, carrying the projected index
  const auto& axes = p.axes();
  const std::size_t rank = axes.size();
  std::vector<std::size_t> proj_stride(rank, 0);
  for (std::size_t k = 0; k < kept_pos.size(); ++k) proj_stride[kept_pos[k]] = out_strides[k];
  std::vector<int> digit(rank, 0);
  std::size_t out_index = 0;
  const auto& w = p.weights();
  for (std::size_t cell = 0; cell < w.size(); ++cell) {
    out[out_index] += w[cell];
    for (std::size_t i = rank; i-- > 0;) {
      ++digit[i];
      out_index += proj_stride[i];
      if (digit[i] < axes[i].size) break;
      out_index -= static_cast<std::size_t>(digit[i]) * proj_stride[i];
      digit[i] = 0;
    }
  }
  return JointPmf(std::move(out_axes), std::move(out));
}

JointPmf chainCompose(const JointPmf& p, const CondPmf& k, std::size_t budget) {
  // from-axes of k must appear in p with equal sizes; to-axes must be new
  for (const auto& f : k.fromAxes()) {
    if (!p.hasAxis(f.name)) throw AxisError("chainCompose: kernel conditions on missing axis '" + f.name + "'");
    if (p.axes()[p.axisIndex(f.name)].size != f.size)
      throw AxisError("chainCompose: size mismatch on axis '" + f.name + "'");
  }
  for (const auto& t : k.toAxes())
    if (p.hasAxis(t.name)) throw AxisError("chainCompose: axis collision on '" + t.name + "'");

  std::vector<Alphabet> out_axes = p.axes();
  out_axes.insert(out_axes.end(), k.toAxes().begin(), k.toAxes().end());
  out_axes = sortByName(out_axes);
  const std::size_t out_cells = p.cells() * k.toCells();
  if (out_cells > budget) throw CapacityError("chainCompose", out_cells);

  auto out_strides = rowMajorStrides(out_axes);
  // stride of each p-axis and each to-axis inside the output tensor
  const std::size_t rank_p = p.axes().size();
  std::vector<std::size_t> p_out_stride(rank_p);
  for (std::size_t i = 0; i < rank_p; ++i) {
    auto it = std::find_if(out_axes.begin(), out_axes.end(),
                           [&](const Alphabet& a) { return a.name == p.axes()[i].name; });
    p_out_stride[i] = out_strides[static_cast<std::size_t>(it - out_axes.begin())];
  }
  const auto& to_axes = k.toAxes();
  std::vector<std::size_t> to_out_stride(to_axes.size());
  for (std::size_t i = 0; i < to_axes.size(); ++i) {
    auto it = std::find_if(out_axes.begin(), out_axes.end(),
                           [&](const Alphabet& a) { return a.name == to_axes[i].name; });
    to_out_stride[i] = out_strides[static_cast<std::size_t>(it - out_axes.begin())];
  }
  // from-row index of the kernel as a function of the p-cell
  auto from_strides = rowMajorStrides(k.fromAxes());
  std::vector<std::size_t> p_from_stride(rank_p, 0);
  for (std::size_t i = 0; i < k.fromAxes().size(); ++i)
    p_from_stride[p.axisIndex(k.fromAxes()[i].name)] = from_strides[i];

  // enumerate output offsets of to-cells once
  std::vector<std::size_t> to_offset(k.toCells());
  {
    std::vector<int> tdig(to_axes.size(), 0);
    std::size_t off = 0;
    for (std::size_t tc = 0; tc < k.toCells(); ++tc) {
      to_offset[tc] = off;
      for (std::size_t i = to_axes.size(); i-- > 0;) {
        ++tdig[i];
        off += to_out_stride[i];
        if (tdig[i] < to_axes[i].size) break;
        off -= static_cast<std::size_t>(tdig[i]) * to_out_stride[i];
        tdig[i] = 0;
      }
    }
  }

  std::vector<double> out(out_cells, 0.0);
  std::vector<int> digit(rank_p, 0);
  std::size_t out_base = 0, from_row = 0;
  const auto& w = p.weights();
  for (std::size_t cell = 0; cell < w.size(); ++cell) {
    const double mass = w[cell];
    if (mass > 0.0) {
      const double* row = k.kernel().data() + from_row * k.toCells();
      for (std::size_t tc = 0; tc < k.toCells(); ++tc)
        if (row[tc] > 0.0) out[out_base + to_offset[tc]] = mass * row[tc];
    }
    for (std::size_t i = rank_p; i-- > 0;) {
      ++digit[i];
      out_base += p_out_stride[i];
      from_row += p_from_stride[i];
      if (digit[i] < p.axes()[i].size) break;
      out_base -= static_cast<std::size_t>(digit[i]) * p_out_stride[i];
      from_row -= static_cast<std::size_t>(digit[i]) * p_from_stride[i];
      digit[i] = 0;
    }
  }
  return JointPmf(std::move(out_axes), std::move(out));
}

CondPmf conditionalOf(const JointPmf& p, const std::set<std::string>& target,
                      const std::set<std::string>& given) {
  for (const auto& n : target)
    if (given.count(n)) throw AxisError("conditionalOf: axis '" + n + "' in both sets");
  std::set<std::string> both = target;
  both.insert(given.begin(), given.end());
  JointPmf joint = marginalize(p, both);
  JointPmf cond = marginalize(p, given.empty() ? std::set<std::string>{} : given);
  std::vector<Alphabet> from_axes, to_axes;
  for (const auto& a : joint.axes())
    (given.count(a.name) ? from_axes : to_axes).push_back(a);
  const std::size_t rows = productOfSizes(from_axes);
  const std::size_t cols = productOfSizes(to_axes);
  std::vector<double> k(rows * cols, 0.0);
  // joint axes are sorted; build offset maps into the joint tensor
  auto jstrides = joint.strides();
  std::vector<std::size_t> row_stride, col_stride;
  for (std::size_t i = 0; i < joint.axes().size(); ++i)
    (given.count(joint.axes()[i].name) ? row_stride : col_stride).push_back(jstrides[i]);
  std::vector<std::size_t> row_off(rows, 0), col_off(cols, 0);
  {
    std::vector<int> dig(from_axes.size(), 0);
    std::size_t off = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      row_off[r] = off;
      for (std::size_t i = from_axes.size(); i-- > 0;) {
        ++dig[i];
        off += row_stride[i];
        if (dig[i] < from_axes[i].size) break;
        off -= static_cast<std::size_t>(dig[i]) * row_stride[i];
        dig[i] = 0;
      }
    }
    std::vector<int> dig2(to_axes.size(), 0);
    off = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      col_off[c] = off;
      for (std::size_t i = to_axes.size(); i-- > 0;) {
        ++dig2[i];
        off += col_stride[i];
        if (dig2[i] < to_axes[i].size) break;
        off -= static_cast<std::size_t>(dig2[i]) * col_stride[i];
        dig2[i] = 0;
      }
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    double z = from_axes.empty() ? 1.0 : cond.weights()[r];
    if (z > kSupportEps) {
      for (std::size_t c = 0; c < cols; ++c)
        k[r * cols + c] = joint.weights()[row_off[r] + col_off[c]] / z;
      // renormalize the row exactly to absorb rounding
      KahanSum s;
      for (std::size_t c = 0; c < cols; ++c) s.add(k[r * cols + c]);
      if (s.value() > 0.0)
        for (std::size_t c = 0; c < cols; ++c) k[r * cols + c] /= s.value();
    } else {
      for (std::size_t c = 0; c < cols; ++c)
        k[r * cols + c] = 1.0 / static_cast<double>(cols);
    }
  }
  return CondPmf(std::move(from_axes), std::move(to_axes), std::move(k));
}

// ---- information measures ---------------------------------------------------

namespace {

double entropyOfWeights(const std::vector<double>& w) {
  KahanSum h;
  for (double x : w)
    if (x > kSupportEps) h.add(-x * std::log2(x));
  double v = h.value();
  return v < 0.0 ? 0.0 : v;
}

}  // namespace

double entropy(const JointPmf& p) { return entropyOfWeights(p.weights()); }

double entropy(const JointPmf& p, const std::set<std::string>& axes) {
  if (axes.empty()) return 0.0;
  if (axes.size() == p.axes().size()) return entropyOfWeights(p.weights());
  return entropyOfWeights(marginalize(p, axes).weights());
}

double condEntropy(const JointPmf& p, const std::set<std::string>& target,
                   const std::set<std::string>& given) {
  for (const auto& n : target)
    if (given.count(n)) throw AxisError("condEntropy: overlapping axis sets");
  std::set<std::string> both = target;
  both.insert(given.begin(), given.end());
  double h = entropy(p, both) - entropy(p, given);
  return h < 0.0 ? 0.0 : h;
}

double mutualInfo(const JointPmf& p, const std::set<std::string>& a,
                  const std::set<std::string>& b) {
  for (const auto& n : a)
    if (b.count(n)) throw AxisError("mutualInfo: overlapping axis sets");
  std::set<std::string> ab = a;
  ab.insert(b.begin(), b.end());
  double v = entropy(p, a) + entropy(p, b) - entropy(p, ab);
  return v < 0.0 ? 0.0 : v;
}

double condMutualInfo(const JointPmf& p, const std::set<std::string>& a,
                      const std::set<std::string>& b, const std::set<std::string>& given) {
  for (const auto& n : a)
    if (b.count(n) || given.count(n)) throw AxisError("condMutualInfo: overlapping axis sets");
  for (const auto& n : b)
    if (given.count(n)) throw AxisError("condMutualInfo: overlapping axis sets");
  std::set<std::string> ag = a, bg = b, abg = a;
  ag.insert(given.begin(), given.end());
  bg.insert(given.begin(), given.end());
  abg.insert(b.begin(), b.end());
  abg.insert(given.begin(), given.end());
  double v = entropy(p, ag) + entropy(p, bg) - entropy(p, given) - entropy(p, abg);
  return v < 0.0 ? 0.0 : v;
}

// ---- block extensions --------------------------------------------------------

std::string replicaName(const std::string& base, int t) {
  return base + std::to_string(t);
}

JointPmf iidPower(const JointPmf& p, int n, std::size_t budget) {
  if (n < 1) throw PreconditionError("iidPower: n must be >= 1");
  double cells_d = std::pow(static_cast<double>(p.cells()), n);
  if (cells_d > static_cast<double>(budget))
    throw CapacityError("iidPower", static_cast<std::size_t>(std::min(cells_d, 1e18)));
  if (n == 1) return p;
  std::vector<Alphabet> axes;
  for (int t = 1; t <= n; ++t)
    for (const auto& a : p.axes()) axes.push_back({replicaName(a.name, t), a.size});
  // weights for the t-major order (t outer, p's axes inner) are the n-fold
  // outer product of p with itself; build by repeated expansion.
  std::vector<double> w = p.weights();
  for (int t = 1; t < n; ++t) {
    std::vector<double> next(w.size() * p.cells());
    std::size_t k = 0;
    for (double a : w)
      for (double b : p.weights()) next[k++] = a * b;
    w = std::move(next);
  }
  return JointPmf(std::move(axes), std::move(w));
}

JointPmf groupAxes(const JointPmf& p, const std::vector<std::string>& parts,
                   const std::string& fused) {
  if (parts.empty()) throw AxisError("groupAxes: empty part list");
  std::size_t fused_size = 1;
  for (const auto& name : parts) {
    if (!p.hasAxis(name)) throw AxisError("groupAxes: unknown axis '" + name + "'");
    fused_size *= static_cast<std::size_t>(p.axes()[p.axisIndex(name)].size);
  }
  for (const auto& a : p.axes())
    if (a.name == fused && std::find(parts.begin(), parts.end(), fused) == parts.end())
      throw AxisError("groupAxes: fused name collides with a kept axis");

  std::vector<Alphabet> out_axes;
  for (const auto& a : p.axes())
    if (std::find(parts.begin(), parts.end(), a.name) == parts.end()) out_axes.push_back(a);
  out_axes.push_back({fused, static_cast<int>(fused_size)});
  auto out_sorted = sortByName(out_axes);
  auto out_strides = rowMajorStrides(out_sorted);

  // output stride of each source axis: kept axes map to themselves; part t
  // contributes (product of later part sizes) * stride(fused).
  const std::size_t rank = p.axes().size();
  std::vector<std::size_t> contrib(rank, 0);
  std::size_t fused_stride = 0;
  for (std::size_t i = 0; i < out_sorted.size(); ++i)
    if (out_sorted[i].name == fused) fused_stride = out_strides[i];
  std::vector<std::size_t> radix(parts.size(), 1);
  for (std::size_t i = parts.size(); i-- > 1;)
    radix[i - 1] = radix[i] * static_cast<std::size_t>(p.axes()[p.axisIndex(parts[i])].size);
  for (std::size_t i = 0; i < rank; ++i) {
    const auto& name = p.axes()[i].name;
    auto it = std::find(parts.begin(), parts.end(), name);
    if (it != parts.end()) {
      contrib[i] = radix[static_cast<std::size_t>(it - parts.begin())] * fused_stride;
    } else {
      for (std::size_t k = 0; k < out_sorted.size(); ++k)
        if (out_sorted[k].name == name) contrib[i] = out_strides[k];
    }
  }
  std::vector<double> out(p.cells());
  std::vector<int> digit(rank, 0);
  std::size_t out_index = 0;
  const auto& w = p.weights();
  for (std::size_t cell = 0; cell < w.size(); ++cell) {
    out[out_index] = w[cell];
    for (std::size_t i = rank; i-- > 0;) {
      ++digit[i];
      out_index += contrib[i];
      if (digit[i] < p.axes()[i].size) break;
      out_index -= static_cast<std::size_t>(digit[i]) * contrib[i];
      digit[i] = 0;
    }
  }
  return JointPmf(std::move(out_sorted), std::move(out));
}

JointPmf splitAxis(const JointPmf& p, const std::string& fused, const std::string& base,
                   int n, int letter_size) {
  const auto& fa = p.axes()[p.axisIndex(fused)];
  std::size_t expect = 1;
  for (int t = 0; t < n; ++t) expect *= static_cast<std::size_t>(letter_size);
  if (static_cast<std::size_t>(fa.size) != expect)
    throw AxisError("splitAxis: size of '" + fused + "' is not letter_size^n");
  std::vector<Alphabet> out_axes;
  for (const auto& a : p.axes())
    if (a.name != fused) out_axes.push_back(a);
  for (int t = 1; t <= n; ++t) out_axes.push_back({replicaName(base, t), letter_size});
  auto out_sorted = sortByName(out_axes);
  auto out_strides = rowMajorStrides(out_sorted);
  auto strideOf = [&](const std::string& name) {
    for (std::size_t i = 0; i < out_sorted.size(); ++i)
      if (out_sorted[i].name == name) return out_strides[i];
    throw AxisError("splitAxis: internal");
  };
  // big-endian: replica 1 most significant
  std::vector<std::size_t> letter_stride(static_cast<std::size_t>(n));
  for (int t = 1; t <= n; ++t) letter_stride[static_cast<std::size_t>(t - 1)] = strideOf(replicaName(base, t));
  const std::size_t rank = p.axes().size();
  std::vector<std::size_t> contrib(rank, 0);
  std::size_t fused_pos = p.axisIndex(fused);
  for (std::size_t i = 0; i < rank; ++i)
    if (i != fused_pos) contrib[i] = strideOf(p.axes()[i].name);

  std::vector<double> out(p.cells());
  std::vector<int> digit(rank, 0);
  const auto& w = p.weights();
  // fused digit decomposed per cell (it changes fastest only if last axis)
  for (std::size_t cell = 0; cell < w.size(); ++cell) {
    std::size_t out_index = 0;
    for (std::size_t i = 0; i < rank; ++i) {
      if (i == fused_pos) {
        std::size_t v = static_cast<std::size_t>(digit[i]);
        for (int t = n; t-- > 0;) {
          out_index += (v % static_cast<std::size_t>(letter_size)) * letter_stride[static_cast<std::size_t>(t)];
          v /= static_cast<std::size_t>(letter_size);
        }
      } else {
        out_index += static_cast<std::size_t>(digit[i]) * contrib[i];
      }
    }
    out[out_index] = w[cell];
    for (std::size_t i = rank; i-- > 0;) {
      ++digit[i];
      if (digit[i] < p.axes()[i].size) break;
      digit[i] = 0;
    }
  }
  return JointPmf(std::move(out_sorted), std::move(out));
}

JointPmf renameAxis(const JointPmf& p, const std::string& old_name,
                    const std::string& new_name) {
  std::vector<Alphabet> axes = p.axes();
  bool found = false;
  for (auto& a : axes) {
    if (a.name == new_name) throw AxisError("renameAxis: target name '" + new_name + "' exists");
    if (a.name == old_name) {
      a.name = new_name;
      found = true;
    }
  }
  if (!found) throw AxisError("renameAxis: unknown axis '" + old_name + "'");
  return JointPmf(std::move(axes), p.weights());
}

JointPmf productJoint(const JointPmf& a, const JointPmf& b, std::size_t budget) {
  for (const auto& ax : b.axes())
    if (a.hasAxis(ax.name)) throw AxisError("productJoint: axis collision on '" + ax.name + "'");
  const std::size_t cells = a.cells() * b.cells();
  if (cells > budget) throw CapacityError("productJoint", cells);
  std::vector<Alphabet> axes = a.axes();
  axes.insert(axes.end(), b.axes().begin(), b.axes().end());
  std::vector<double> w(cells);
  std::size_t k = 0;
  for (double x : a.weights())
    for (double y : b.weights()) w[k++] = x * y;
  return JointPmf(std::move(axes), std::move(w));
}

double binaryEntropy(double p) {
  double h = 0.0;
  if (p > kSupportEps) h -= p * std::log2(p);
  if (1.0 - p > kSupportEps) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

}  // namespace coordsim
