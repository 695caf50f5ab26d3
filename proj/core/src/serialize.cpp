#include "grudyn/serialize.hpp"

#include <fstream>

namespace grudyn {

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const Json& j, int rows, int cols, const std::string& name) {
  if (!j.is_array()) throw ShapeError(name + ": expected an array");
  Mat m(rows, cols);
  const bool nested = !j.empty() && j.front().is_array();
  if (nested) {
    if (static_cast<int>(j.size()) != rows) throw ShapeError(name + ": wrong number of rows");
    for (int i = 0; i < rows; ++i) {
      const Json& row = j[i];
      if (!row.is_array() || static_cast<int>(row.size()) != cols)
        throw ShapeError(name + ": wrong row length");
      for (int k = 0; k < cols; ++k) m(i, k) = row[k].get<double>();
    }
  } else {
    if (static_cast<int>(j.size()) != rows * cols) throw ShapeError(name + ": wrong element count");
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) m(i, k) = j[i * cols + k].get<double>();
  }
  return m;
}

Json vector_to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vec vector_from_json(const Json& j, int n, const std::string& name) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ShapeError(name + ": expected an array of length " + std::to_string(n));
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = j[i].get<double>();
  return v;
}

Json to_json(const GruParams& p) {
  return Json{{"d", p.dim()},
              {"Uz", matrix_to_json(p.Uz)},
              {"Ur", matrix_to_json(p.Ur)},
              {"Uh", matrix_to_json(p.Uh)},
              {"bz", vector_to_json(p.bz)},
              {"br", vector_to_json(p.br)},
              {"bh", vector_to_json(p.bh)}};
}

GruParams gru_params_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("d")) throw ShapeError("GRU params: missing \"d\"");
  const int d = j.at("d").get<int>();
  if (d <= 0) throw ShapeError("GRU params: d must be positive");
  // Missing blocks default to zero, which is how the catalog omits Uz/bz.
  auto mat = [&](const char* key) {
    return j.contains(key) ? matrix_from_json(j.at(key), d, d, key) : Mat(Mat::Zero(d, d));
  };
  auto vec = [&](const char* key) {
    return j.contains(key) ? vector_from_json(j.at(key), d, key) : Vec(Vec::Zero(d));
  };
  GruParams p{mat("Uz"), mat("Ur"), mat("Uh"), vec("bz"), vec("br"), vec("bh")};
  p.validate();
  return p;
}

Json to_json(const InputParams& in) {
  return Json{{"d", in.Wz.rows()},
              {"p", in.input_dim()},
              {"Wz", matrix_to_json(in.Wz)},
              {"Wr", matrix_to_json(in.Wr)},
              {"Wh", matrix_to_json(in.Wh)}};
}

InputParams input_params_from_json(const Json& j, int d) {
  if (!j.is_object() || !j.contains("p")) throw ShapeError("input params: missing \"p\"");
  if (j.contains("d") && j.at("d").get<int>() != d) throw ShapeError("input params: d mismatch");
  const int p = j.at("p").get<int>();
  if (p <= 0) throw ShapeError("input params: p must be positive");
  InputParams in{matrix_from_json(j.at("Wz"), d, p, "Wz"), matrix_from_json(j.at("Wr"), d, p, "Wr"),
                 matrix_from_json(j.at("Wh"), d, p, "Wh")};
  in.validate(d);
  return in;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error("cannot parse " + path + ": " + e.what());
  }
}

void save_json_file(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("write failed: " + path);
}

GruParams load_gru_params(const std::string& path) {
  const Json j = load_json_file(path);
  // Trained-model files keep the GRU block at the top level.
  return gru_params_from_json(j);
}

}  // namespace grudyn
