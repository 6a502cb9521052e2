#ifndef COORDSIM_PROB_HPP
#define COORDSIM_PROB_HPP

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "coordsim/common.hpp"

namespace coordsim {

/// A named finite alphabet; symbols are indices 0..size-1.
struct Alphabet {
  std::string name;
  int size = 0;
};

bool operator==(const Alphabet& a, const Alphabet& b);

/// Exact joint distribution over named finite axes, stored as a dense tensor.
/// Axes are canonicalized (sorted by name) so equality of axis sets is
/// well defined regardless of construction order. Immutable after build.
class JointPmf {
 public:
  // weights are row-major over the axes in the order GIVEN; the constructor
  // sorts axes by name and permutes the tensor to match.
  JointPmf(std::vector<Alphabet> axes, std::vector<double> weights);

  const std::vector<Alphabet>& axes() const { return axes_; }
  const std::vector<double>& weights() const { return w_; }
  std::size_t cells() const { return w_.size(); }

  bool hasAxis(const std::string& name) const;
  std::size_t axisIndex(const std::string& name) const;  // throws AxisError
  const std::vector<std::size_t>& strides() const { return strides_; }

  double at(const std::vector<int>& multi_index) const;

  static JointPmf uniform(std::vector<Alphabet> axes);
  static JointPmf pointMass(std::vector<Alphabet> axes, const std::vector<int>& symbol);
  /// Binary pmf with P(1) = p1 on a single axis.
  static JointPmf bernoulli(const std::string& axis, double p1);

 private:
  std::vector<Alphabet> axes_;
  std::vector<std::size_t> strides_;
  std::vector<double> w_;
};

/// Row-stochastic kernel from one named axis set to another (channels,
/// encoders, decoders). Rows are indexed by the from-configuration.
class CondPmf {
 public:
  // kernel is row-major [from-config][to-config] over the orders GIVEN;
  // both axis lists are canonicalized independently.
  CondPmf(std::vector<Alphabet> from_axes, std::vector<Alphabet> to_axes,
          std::vector<double> kernel);

  const std::vector<Alphabet>& fromAxes() const { return from_; }
  const std::vector<Alphabet>& toAxes() const { return to_; }
  std::size_t fromCells() const { return from_cells_; }
  std::size_t toCells() const { return to_cells_; }
  const std::vector<double>& kernel() const { return k_; }

  double at(std::size_t from_index, std::size_t to_index) const {
    return k_[from_index * to_cells_ + to_index];
  }

  static CondPmf identity(const Alphabet& from, const std::string& to_name);
  /// Binary symmetric channel with crossover probability p.
  static CondPmf bsc(const std::string& from, const std::string& to, double p);
  /// Kernel ignoring its input: every row equals the given pmf.
  static CondPmf constant(std::vector<Alphabet> from_axes, const JointPmf& row);

  /// Same kernel with axes renamed (sizes preserved, order preserved).
  CondPmf renamed(const std::vector<std::string>& from_names,
                  const std::vector<std::string>& to_names) const;

 private:
  std::vector<Alphabet> from_, to_;
  std::size_t from_cells_ = 1, to_cells_ = 1;
  std::vector<double> k_;
};

// ---- total variation and composition -------------------------------------

/// Half-L1 total variation distance; requires identical axes.
double tvDistance(const JointPmf& p, const JointPmf& q);

/// Sum out every axis not in `keep`.
JointPmf marginalize(const JointPmf& p, const std::set<std::string>& keep);

/// Extend p by the kernel k: result over axes(p) union to-axes(k), with
/// result(a, b) = p(a) * k(b | from-part of a).
JointPmf chainCompose(const JointPmf& p, const CondPmf& k,
                      std::size_t budget = kDefaultBudget);

/// Conditional of `target` axes given `given` axes, read off a joint.
/// Rows whose condition has mass <= kSupportEps are completed uniformly.
CondPmf conditionalOf(const JointPmf& p, const std::set<std::string>& target,
                      const std::set<std::string>& given);

// ---- information measures (bits, 0 log 0 = 0) -----------------------------

double entropy(const JointPmf& p, const std::set<std::string>& axes);
double entropy(const JointPmf& p);  // over all axes
double condEntropy(const JointPmf& p, const std::set<std::string>& target,
                   const std::set<std::string>& given);
double mutualInfo(const JointPmf& p, const std::set<std::string>& a,
                  const std::set<std::string>& b);
double condMutualInfo(const JointPmf& p, const std::set<std::string>& a,
                      const std::set<std::string>& b, const std::set<std::string>& given);

// ---- block extensions and axis plumbing -----------------------------------

/// Name of the t-th replica (1-based) of a base axis in a block of length n.
std::string replicaName(const std::string& base, int t);

/// n-fold product: every axis A of p becomes replicas A1..An.
JointPmf iidPower(const JointPmf& p, int n, std::size_t budget = kDefaultBudget);

/// Reshape: fuse the ordered axes `parts` into one axis `fused` whose index
/// is the big-endian mixed-radix number over `parts` (first part most
/// significant). Pure reindexing, no mass moves between cells.
JointPmf groupAxes(const JointPmf& p, const std::vector<std::string>& parts,
                   const std::string& fused);

/// Inverse of groupAxes: split axis `fused` into n replicas of `base` with
/// the given per-letter size (big-endian, replica 1 most significant).
JointPmf splitAxis(const JointPmf& p, const std::string& fused,
                   const std::string& base, int n, int letter_size);

JointPmf renameAxis(const JointPmf& p, const std::string& old_name,
                    const std::string& new_name);

// ---- misc helpers ----------------------------------------------------------

/// Product of two joints over disjoint axes.
JointPmf productJoint(const JointPmf& a, const JointPmf& b,
                      std::size_t budget = kDefaultBudget);

double binaryEntropy(double p);  // h(p) in bits

}  // namespace coordsim

#endif  // COORDSIM_PROB_HPP
