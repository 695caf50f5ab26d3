#pragma once

// JSON model-file schema shared by every module. Matrices are written as
// arrays of rows (row-major); a flat row-major array of the right length is
// also accepted on input.
//
//   { "d": 2, "Uz": [[..],[..]], "Ur": .., "Uh": .., "bz": [..], "br": [..], "bh": [..] }
//   { "d": 2, "p": 1, "Wz": .., "Wr": .., "Wh": .. }

#include "grudyn/gru.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace grudyn {

using Json = nlohmann::json;

Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j, int rows, int cols, const std::string& name);
Json vector_to_json(const Vec& v);
Vec vector_from_json(const Json& j, int n, const std::string& name);

Json to_json(const GruParams& params);
GruParams gru_params_from_json(const Json& j);

Json to_json(const InputParams& inputs);
InputParams input_params_from_json(const Json& j, int d);

/// Reads a GruParams object from a file; accepts full model files too.
GruParams load_gru_params(const std::string& path);
Json load_json_file(const std::string& path);
void save_json_file(const Json& j, const std::string& path);

}  // namespace grudyn
