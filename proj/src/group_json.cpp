#include "carnot/group_json.hpp"

#include "carnot/error.hpp"

#include <string>

namespace carnot {

using nlohmann::json;

json group_to_json(const CarnotGroup& g)
{
  switch (g.kind()) {
  case GroupKind::Euclidean:
    return {{"kind", "euclidean"}, {"n", g.order()}};
  case GroupKind::Heisenberg:
    return {{"kind", "heisenberg"}, {"n", g.order()}};
  case GroupKind::HType: {
    json mats = json::array();
    for (const auto& js : g.structure()) {
      json row_major = json::array();
      for (int r = 0; r < js.rows(); ++r)
        for (int c = 0; c < js.cols(); ++c)
          row_major.push_back(js(r, c));
      mats.push_back(row_major);
    }
    return {{"kind", "htype"},
            {"m", g.horizontal_dim()},
            {"k", g.layer_dims()[1]},
            {"J", mats},
            {"norm_kappa", g.norm_kappa()}};
  }
  }
  return {};
}

CarnotGroup group_from_json(const json& doc)
{
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    throw InvalidParameter("group descriptor needs a string field 'kind'");
  const auto kind = doc["kind"].get<std::string>();
  try {
    if (kind == "euclidean")
      return make_euclidean(doc.at("n").get<int>());
    if (kind == "heisenberg")
      return make_heisenberg(doc.at("n").get<int>());
    if (kind == "htype") {
      const double kappa = doc.value("norm_kappa", 16.0);
      if (doc.contains("preset")) {
        const auto preset = doc["preset"].get<std::string>();
        if (preset != "quaternionic")
          throw InvalidParameter("unknown H-type preset '" + preset + "'");
        return make_quaternionic_htype(kappa);
      }
      const int m = doc.at("m").get<int>();
      const int k = doc.at("k").get<int>();
      std::vector<Eigen::MatrixXd> J;
      for (const auto& entry : doc.at("J")) {
        const auto flat = entry.get<std::vector<double>>();
        if (static_cast<int>(flat.size()) != m * m)
          throw InvalidParameter("each J matrix needs m*m = " + std::to_string(m * m) +
                                 " entries");
        Eigen::MatrixXd js(m, m);
        for (int r = 0; r < m; ++r)
          for (int c = 0; c < m; ++c)
            js(r, c) = flat[static_cast<std::size_t>(r * m + c)];
        J.push_back(js);
      }
      return make_htype(m, k, J, kappa);
    }
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("malformed group descriptor: ") + e.what());
  }
  throw InvalidParameter("unknown group kind '" + kind + "'");
}

} // namespace carnot
