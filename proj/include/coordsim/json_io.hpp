#ifndef COORDSIM_JSON_IO_HPP
#define COORDSIM_JSON_IO_HPP

#include <string>

#include "coordsim/prob.hpp"
#include "json.hpp"

namespace coordsim {

// Wire schema: {"axes":[{"name":str,"size":int}], "weights":[floats]} for a
// joint pmf; kernels carry "from_axes"/"to_axes"/"kernel". Doubles round-trip
// exactly (shortest-representation encoding).

nlohmann::json toJson(const JointPmf& p);
JointPmf jointFromJson(const nlohmann::json& j);

nlohmann::json toJson(const CondPmf& k);
CondPmf condFromJson(const nlohmann::json& j);

}  // namespace coordsim

#endif  // COORDSIM_JSON_IO_HPP
