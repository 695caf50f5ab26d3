#pragma once

#include <grudyn/gru.hpp>
#include <grudyn/serialize.hpp>

#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace grudyn::cli {

/// Where a command's GRU parameters come from: a JSON file (plain parameter
/// block or trained model), a catalog id, or inline blocks. Inline blocks
/// override whatever the file or case supplied; absent blocks default to zero.
struct ParamsInput {
  std::string file;
  std::string case_id;
  int d = 0;
  std::string uz, ur, uh, bz, br, bh;  // comma-separated, matrices row-major

  void add_options(CLI::App& app);
  bool empty() const;
  GruParams resolve(int default_d = 2) const;
  Json describe() const;
};

std::vector<double> parse_list(const std::string& text, const std::string& name);

}  // namespace grudyn::cli
