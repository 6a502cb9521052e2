#ifndef COORDSIM_TESTUTIL_HPP
#define COORDSIM_TESTUTIL_HPP

#include <cmath>
#include <random>
#include <vector>

#include "coordsim/prob.hpp"
#include "coordsim/rng.hpp"

namespace coordsim::testutil {

// Random interior-ish pmf via normalized exponentials (Dirichlet(1)).
inline std::vector<double> randomSimplex(std::mt19937_64& rng, std::size_t k) {
  std::vector<double> w(k);
  double sum = 0.0;
  for (auto& x : w) {
    x = -std::log(uniformPos(rng));
    sum += x;
  }
  for (auto& x : w) x /= sum;
  // exact renormalization pass
  double s2 = 0.0;
  for (double x : w) s2 += x;
  for (auto& x : w) x /= s2;
  return w;
}

inline JointPmf randomJoint(std::mt19937_64& rng, std::vector<Alphabet> axes) {
  std::size_t cells = 1;
  for (const auto& a : axes) cells *= static_cast<std::size_t>(a.size);
  return JointPmf(std::move(axes), randomSimplex(rng, cells));
}

inline CondPmf randomKernel(std::mt19937_64& rng, std::vector<Alphabet> from,
                            std::vector<Alphabet> to) {
  std::size_t rows = 1, cols = 1;
  for (const auto& a : from) rows *= static_cast<std::size_t>(a.size);
  for (const auto& a : to) cols *= static_cast<std::size_t>(a.size);
  std::vector<double> k;
  k.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto row = randomSimplex(rng, cols);
    k.insert(k.end(), row.begin(), row.end());
  }
  return CondPmf(std::move(from), std::move(to), std::move(k));
}

}  // namespace coordsim::testutil

#endif  // COORDSIM_TESTUTIL_HPP
