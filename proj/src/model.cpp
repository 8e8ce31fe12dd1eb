#include "axtnn/model.hpp"

#include <fstream>

#include <json.hpp>

namespace axtnn {

namespace {

nlohmann::json matrix_to_json(const TernaryMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

TernaryMatrix matrix_from_json(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols) {
  TernaryMatrix m(rows, cols);
  if (static_cast<Eigen::Index>(j.size()) != rows) throw ConfigError("model matrix row count mismatch");
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) throw ConfigError("model matrix column count mismatch");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j[r][c].get<int>();
  }
  return m;
}

}  // namespace

void TnnModel::save(const std::string& path) const {
  validate();
  nlohmann::json j;
  j["dataset"] = dataset;
  j["k"] = k;
  j["n"] = n;
  j["m"] = m;
  j["c"] = c;
  j["w1"] = matrix_to_json(w1);
  j["w2"] = matrix_to_json(w2);
  j["z"] = z;
  j["feat_min"] = feat_min;
  j["feat_max"] = feat_max;
  j["seed"] = seed;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write model file: " + path);
  out << j.dump(2) << "\n";
}

TnnModel TnnModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("model file " + path + ": " + e.what());
  }
  TnnModel model;
  model.dataset = j.value("dataset", std::string{});
  model.k = j.at("k").get<int>();
  model.n = j.at("n").get<int>();
  model.m = j.at("m").get<int>();
  model.c = j.at("c").get<int>();
  model.w1 = matrix_from_json(j.at("w1"), model.m, model.n);
  model.w2 = matrix_from_json(j.at("w2"), model.c, model.m);
  model.z = j.at("z").get<std::vector<int>>();
  model.feat_min = j.at("feat_min").get<std::vector<double>>();
  model.feat_max = j.at("feat_max").get<std::vector<double>>();
  model.seed = j.value("seed", 0ULL);
  model.validate();
  return model;
}

}  // namespace axtnn
