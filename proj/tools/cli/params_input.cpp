#include "params_input.hpp"

#include <grudyn/catalog.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <sstream>

namespace grudyn::cli {

std::vector<double> parse_list(const std::string& text, const std::string& name) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("--" + name + ": cannot parse '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw ConfigError("--" + name + ": cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("--" + name + " is empty");
  return out;
}

void ParamsInput::add_options(CLI::App& app) {
  app.add_option("--params", file, "JSON parameter or model file");
  app.add_option("--case", case_id, "catalog case id (e.g. xxxvi, 4b)");
  app.add_option("--d", d, "hidden dimension for inline parameters")->check(CLI::PositiveNumber);
  app.add_option("--uz", uz, "Uz, row-major comma list");
  app.add_option("--ur", ur, "Ur, row-major comma list");
  app.add_option("--uh", uh, "Uh, row-major comma list");
  app.add_option("--bz", bz, "bz, comma list");
  app.add_option("--br", br, "br, comma list");
  app.add_option("--bh", bh, "bh, comma list");
}

bool ParamsInput::empty() const {
  return file.empty() && case_id.empty() && uz.empty() && ur.empty() && uh.empty() &&
         bz.empty() && br.empty() && bh.empty();
}

namespace {

int infer_dim(const std::string& text, bool matrix, const std::string& name) {
  const auto n = static_cast<int>(parse_list(text, name).size());
  if (!matrix) return n;
  const int d = static_cast<int>(std::lround(std::sqrt(n)));
  if (d * d != n) throw ShapeError("--" + name + " needs d*d entries, got " + std::to_string(n));
  return d;
}

void apply_matrix(Mat& m, const std::string& text, int d, const std::string& name) {
  if (text.empty()) return;
  const auto v = parse_list(text, name);
  if (static_cast<int>(v.size()) != d * d)
    throw ShapeError("--" + name + " needs " + std::to_string(d * d) + " entries");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = v[static_cast<std::size_t>(i * d + j)];
}

void apply_vector(Vec& b, const std::string& text, int d, const std::string& name) {
  if (text.empty()) return;
  const auto v = parse_list(text, name);
  if (static_cast<int>(v.size()) != d)
    throw ShapeError("--" + name + " needs " + std::to_string(d) + " entries");
  for (int i = 0; i < d; ++i) b[i] = v[static_cast<std::size_t>(i)];
}

}  // namespace

GruParams ParamsInput::resolve(int default_d) const {
  if (!file.empty() && !case_id.empty()) throw ConfigError("--params and --case are exclusive");
  GruParams p;
  if (!file.empty()) {
    p = load_gru_params(file);
  } else if (!case_id.empty()) {
    p = find_case(case_id).params;
  } else {
    struct Block {
      const std::string* text;
      bool matrix;
      const char* name;
    };
    const Block blocks[] = {{&uh, true, "uh"},  {&ur, true, "ur"},  {&uz, true, "uz"},
                            {&bh, false, "bh"}, {&br, false, "br"}, {&bz, false, "bz"}};
    int dim = d;
    for (const Block& b : blocks)
      if (dim == 0 && !b.text->empty()) dim = infer_dim(*b.text, b.matrix, b.name);
    p = GruParams::zeros(dim > 0 ? dim : default_d);
  }
  if (d > 0 && d != p.dim()) throw ShapeError("--d disagrees with the parameter source");
  const int n = p.dim();
  apply_matrix(p.Uz, uz, n, "uz");
  apply_matrix(p.Ur, ur, n, "ur");
  apply_matrix(p.Uh, uh, n, "uh");
  apply_vector(p.bz, bz, n, "bz");
  apply_vector(p.br, br, n, "br");
  apply_vector(p.bh, bh, n, "bh");
  p.validate();
  return p;
}

Json ParamsInput::describe() const {
  Json j = Json::object();
  if (!file.empty()) j["file"] = file;
  if (!case_id.empty()) j["case"] = case_id;
  if (file.empty() && case_id.empty()) j["inline"] = true;
  return j;
}

}  // namespace grudyn::cli
