#include "coordsim/json_io.hpp"

namespace coordsim {

namespace {

nlohmann::json axesToJson(const std::vector<Alphabet>& axes) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& a : axes) arr.push_back({{"name", a.name}, {"size", a.size}});
  return arr;
}

std::vector<Alphabet> axesFromJson(const nlohmann::json& arr) {
  std::vector<Alphabet> axes;
  for (const auto& e : arr)
    axes.push_back({e.at("name").get<std::string>(), e.at("size").get<int>()});
  return axes;
}

}  // namespace

nlohmann::json toJson(const JointPmf& p) {
  return {{"axes", axesToJson(p.axes())}, {"weights", p.weights()}};
}

JointPmf jointFromJson(const nlohmann::json& j) {
  return JointPmf(axesFromJson(j.at("axes")), j.at("weights").get<std::vector<double>>());
}

nlohmann::json toJson(const CondPmf& k) {
  return {{"from_axes", axesToJson(k.fromAxes())},
          {"to_axes", axesToJson(k.toAxes())},
          {"kernel", k.kernel()}};
}

CondPmf condFromJson(const nlohmann::json& j) {
  return CondPmf(axesFromJson(j.at("from_axes")), axesFromJson(j.at("to_axes")),
                 j.at("kernel").get<std::vector<double>>());
}

}  // namespace coordsim
