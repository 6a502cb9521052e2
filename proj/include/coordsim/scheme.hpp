#ifndef COORDSIM_SCHEME_HPP
#define COORDSIM_SCHEME_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "coordsim/binning.hpp"
#include "coordsim/prob.hpp"

namespace coordsim {

/// Single-letter factorization P(S) P(U|S) P(X|U,S) P(Y|X) P(Sh|U,Y). The
/// two Markov chains Y - X - (U,S) and (S,X) - (U,Y) - Sh hold by
/// construction.
struct TargetFactorization {
  JointPmf pS;         // axis "S"
  CondPmf uGivenS;     // S -> U
  CondPmf xGivenUS;    // (S,U) -> X
  CondPmf yGivenX;     // X -> Y
  CondPmf shGivenUY;   // (U,Y) -> Sh

  TargetFactorization(JointPmf ps, CondPmf u_s, CondPmf x_us, CondPmf y_x, CondPmf sh_uy);

  int sizeS() const;
  int sizeU() const;
  int sizeX() const;
  int sizeY() const;
  int sizeSh() const;

  /// Five-axis joint over (S, U, X, Y, Sh).
  JointPmf joint() const;
  /// Target marginal over (S, X, Y, Sh).
  JointPmf targetSXYSh() const;
};

/// Everything the exact evaluator measures on one realized scheme.
struct SchemeReport {
  // half-L1 distances between the binning-scheme and coding-scheme joints
  double tv_full = 0.0;    // over (S^n, U^n, Uh^n, X^n, Y^n, C, F, Sh^n)
  double tv_no_sh = 0.0;   // same without Sh^n
  double tv_scf = 0.0;     // tv(ideal_{S^n,C,F}, P_S^n x Q_C x Q_F), separate route

  double sw_mismatch_ideal = 0.0;    // P{Uh^n != U^n} under the binning scheme
  double sw_mismatch_induced = 0.0;  // same under the coding scheme
  double coupling_ideal = 0.0;       // tv(P_{Z Y U Uh}, P_{Z Y U} 1_{Uh|U})
  double coupling_induced = 0.0;

  double gap_sxysh = 0.0;      // tv(induced_{S X Y Sh}, target^n)
  double gap_joint_f = 0.0;    // tv(induced_{S X Y Sh, F}, Q_F x target^n)
  std::vector<double> gap_given_f;  // tv(induced_{S X Y Sh | F=f}, target^n)
  int best_f = 0;
  double gap_after_remove_f = 0.0;
  double ideal_f_gap = 0.0;    // tv(ideal_{S X Y Sh, F}, Q_F x target^n)

  int flagged_conditions = 0;  // (c,f,s) rows completed uniformly
  int empty_pairs = 0;         // (c,f) bin intersections with no sequence
};

/// A fully realized code at block length n: sampled binnings, the
/// bin-constrained MAP decoder over the reference product joint, and the
/// Bayes-derived encoder P(U^n | C, F, S^n) kept in factored form.
class SchemeInstance {
 public:
  static SchemeInstance build(const TargetFactorization& fact, int n, double R0,
                              double Rtilde, std::uint64_t seed,
                              std::size_t budget = kDefaultBudget);

  int n() const { return n_; }
  const TargetFactorization& factorization() const { return fact_; }
  const BinningPair& binning() const { return binning_; }
  const SWDecoder& swDecoder() const { return *decoder_; }
  int flaggedConditions() const { return flagged_count_; }

  /// Exact evaluation without materializing the joint tensor; enumerates the
  /// support of the two schemes.
  SchemeReport report() const;

  /// Encoder rows as an explicit kernel from (C, F, Sn) to (Un);
  /// zero-probability conditions carry uniform rows.
  CondPmf encoderKernel(std::size_t budget = kDefaultBudget) const;

  /// Dense joints over (C, F, Sn, Un, Uhn, Xn, Yn, Shn), built through the
  /// generic composition ops; independent of the sparse evaluator.
  JointPmf inducedJointDense(std::size_t budget = kDefaultBudget) const;
  JointPmf idealJointDense(std::size_t budget = kDefaultBudget) const;

  /// Encoder denominator Z(c,f,s) = sum of P(u|s) over the (c,f) bin.
  double encoderMass(int c, int f, std::size_t s) const;

 private:
  SchemeInstance() = default;
  friend struct SchemeEval;

  TargetFactorization fact_{JointPmf::bernoulli("S", 0.5),
                            CondPmf::identity({"S", 2}, "U"),
                            CondPmf::constant({{"S", 2}, {"U", 2}}, JointPmf::bernoulli("X", 0.5)),
                            CondPmf::identity({"X", 2}, "Y"),
                            CondPmf::constant({{"U", 2}, {"Y", 2}}, JointPmf::bernoulli("Sh", 0.5))};
  int n_ = 1;
  std::size_t budget_ = kDefaultBudget;
  BinningPair binning_;
  std::shared_ptr<const SWDecoder> decoder_;

  // sizes
  int nS_ = 1, nU_ = 1, nX_ = 1, nY_ = 1, nSh_ = 1;
  std::size_t NS_ = 1, NU_ = 1, NX_ = 1, NY_ = 1, NSh_ = 1;
  int Mc_ = 1, Mf_ = 1;

  // single-letter tables (row-major as documented in scheme.cpp)
  std::vector<double> ps_, pu_s_, px_us_, py_x_, psh_uy_;
  std::vector<double> t1_;       // target joint over (s,x,y,sh)
  std::vector<double> ty_;       // target marginal over y
  std::vector<double> pxavg_;    // mean of px_us over u, per (s,x)
  std::vector<double> py_us_;    // P(y | u,s) with x summed out
  std::vector<double> puy_;      // single-letter P(u,y)

  // sequence-space tables
  std::vector<double> psn_;      // P_S^n per s-sequence
  std::vector<double> pugs_n_;   // P(u-seq | s-seq), [s][u]
  std::vector<double> z_;        // [pair][s]
  std::vector<std::uint32_t> decode_;  // [pair][y]
  std::vector<std::uint8_t> pair_empty_;
  std::vector<std::vector<std::uint32_t>> flagged_s_;  // per pair
  int flagged_count_ = 0;

  std::vector<std::uint16_t> digits_u_, digits_y_, digits_s_;  // [idx*n + t]

  void precompute();
};

/// Per-binning distances of the binning scheme from its product reference;
/// inputs for the intersection argument over a shared seed stream.
struct SchemeSeedGaps {
  std::vector<double> scf_gap;      // tv(ideal_{S,C,F}, P_S x Q_C x Q_F)
  std::vector<double> ideal_f_gap;  // tv(ideal_{SXYSh,F}, Q_F x target^n)
};
SchemeSeedGaps schemeSeedGaps(const TargetFactorization& fact, int n, double R0,
                              double Rtilde, const std::vector<std::uint64_t>& seeds,
                              std::size_t budget = kDefaultBudget);

struct CouplingReport {
  double tv_no_sh = 0.0;
  double tv_full = 0.0;
  double tv_scf = 0.0;
  double sw_mismatch_ideal = 0.0;
  double sw_mismatch_induced = 0.0;
  double coupling_ideal = 0.0;
  double coupling_induced = 0.0;
  bool factor_identity_holds = false;  // tv_no_sh == tv_scf within 1e-12
  bool bound_holds = false;            // couplings <= 2 P{Uh != U}
};
CouplingReport couplingGap(const SchemeInstance& s);

struct RemoveFResult {
  int best_f = 0;
  double gap = 0.0;         // tv(P_{SXYSh | F = f*}, target^n)
  double joint_gap = 0.0;   // tv(P_{SXYSh, F}, Q_F x target^n)
  std::vector<double> per_f;
  int skipped_f = 0;        // f values of zero probability (flagged, none expected)
};
RemoveFResult removeF(const SchemeInstance& s);

struct SweepRow {
  int n = 0;
  std::uint64_t seed = 0;
  double R0 = 0.0, Rtilde = 0.0;
  double gap_all_axes = 0.0;
  double gap_sxys = 0.0;
  double sw_error = 0.0;
  double gap_after_removeF = 0.0;
};

/// Evaluate the scheme across block lengths and seeds. The binning for row
/// (n, seed) is sampled with seed ^ n so a seed keeps its binning across n.
std::vector<SweepRow> schemeSweep(const TargetFactorization& fact, double R0, double Rtilde,
                                  const std::vector<int>& n_list,
                                  const std::vector<std::uint64_t>& seeds,
                                  std::size_t budget = kDefaultBudget);

std::string sweepCsv(const std::vector<SweepRow>& rows);

}  // namespace coordsim

#endif  // COORDSIM_SCHEME_HPP
