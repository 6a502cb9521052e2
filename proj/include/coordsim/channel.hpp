#ifndef COORDSIM_CHANNEL_HPP
#define COORDSIM_CHANNEL_HPP

#include <cstdint>

#include "coordsim/prob.hpp"

namespace coordsim {

// Canonical single-letter axis names used across the library.
inline const char* kAxisS = "S";
inline const char* kAxisU = "U";
inline const char* kAxisX = "X";
inline const char* kAxisY = "Y";
inline const char* kAxisSh = "Sh";   // reconstruction
inline const char* kAxisUh = "Uh";   // decoded codeword
inline const char* kAxisC = "C";     // common randomness
inline const char* kAxisF = "F";     // extra shared randomness

/// Realized alphabet size for rate R at block length n: ceil(2^{nR}).
int rateToSize(int n, double rate);

/// Memoryless source emitting i.i.d. letters on axis S.
struct Source {
  JointPmf pmf;  // single axis "S"
  explicit Source(JointPmf p);
  int alphabetSize() const { return pmf.axes()[0].size; }
};

/// Discrete memoryless channel X -> Y.
struct DMChannel {
  CondPmf kernel;  // from "X" to "Y"
  explicit DMChannel(CondPmf k);
  int inSize() const { return kernel.fromAxes()[0].size; }
  int outSize() const { return kernel.toAxes()[0].size; }
};

/// Shared uniform randomness at rate R0, alphabet size ceil(2^{nR0}).
struct CommonRandomness {
  double rate = 0.0;
  int size = 1;
  CommonRandomness(int n, double r0, const std::string& axis = kAxisC);
  JointPmf pmf;  // uniform over `axis`
};

/// Block code: stochastic encoder (S1..Sn, C) -> (X1..Xn) and stochastic
/// decoder (Y1..Yn, C) -> (Sh1..Shn). Deterministic codes are 0/1 kernels.
struct Code {
  int n = 1;
  double R0 = 0.0;
  CondPmf encoder;
  CondPmf decoder;
  Code(int n_, double r0, CondPmf enc, CondPmf dec);
  int randomnessSize() const { return rateToSize(n, R0); }
};

/// Exact joint distribution the code induces over (S1..Sn, X1..Xn, Y1..Yn,
/// Sh1..Shn, C): uniform C, i.i.d. source, encoder, memoryless channel,
/// decoder.
JointPmf inducedJoint(const Code& code, const Source& src, const DMChannel& ch,
                      std::size_t budget = kDefaultBudget);

/// Half-L1 distance between the induced distribution (C summed out) and the
/// n-fold power of the single-letter target over (S, X, Y, Sh).
double coordinationGap(const Code& code, const Source& src, const DMChannel& ch,
                       const JointPmf& target, std::size_t budget = kDefaultBudget);

/// Copy code over matching alphabets: X = S, Sh = Y, no use of C.
Code copyCode(int n, double R0, int s_size, int y_size);

}  // namespace coordsim

#endif  // COORDSIM_CHANNEL_HPP
