#include <fstream>
#include <sstream>

#include "kgs/initial_data.hpp"
#include "json.hpp"

namespace kgs {

using nlohmann::json;

namespace {

json field_to_json(const Field& f) {
  const Grid& grid = f.grid();
  json entries = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    ModeIndex m = grid.mode(i);
    json row = json::array();
    for (int d = 0; d < grid.dim(); ++d) row.push_back(m[d]);
    row.push_back(f[i].real());
    row.push_back(f[i].imag());
    entries.push_back(std::move(row));
  }
  return entries;
}

Field field_from_json(const GridPtr& grid, const json& entries, const char* name) {
  if (!entries.is_array() || entries.size() != grid->size())
    throw Error(std::string("state dump: field '") + name + "' has the wrong number of modes");
  std::vector<Complex> c(grid->size());
  for (const auto& row : entries) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(grid->dim() + 2))
      throw Error(std::string("state dump: malformed entry in '") + name + "'");
    ModeIndex m{0, 0, 0};
    for (int d = 0; d < grid->dim(); ++d) m[d] = row[d].get<int>();
    c[grid->index_of(m)] = Complex(row[grid->dim()].get<double>(), row[grid->dim() + 1].get<double>());
  }
  return Field(grid, std::move(c));
}

}  // namespace

std::string state_to_json(const KgsState& state) {
  const Grid& g = state.grid();
  json j;
  j["format"] = "kgs-state";
  j["version"] = 1;
  j["grid"] = {{"dim", g.dim()}, {"n", g.n()}, {"length", g.length()}};
  j["u"] = field_to_json(state.u);
  j["psi"] = field_to_json(state.psi);
  return j.dump();
}

KgsState state_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("state dump: ") + e.what());
  }
  if (j.value("format", "") != "kgs-state") throw Error("state dump: not a kgs-state document");
  if (j.value("version", 0) != 1) throw Error("state dump: unsupported version");
  try {
    const auto& g = j.at("grid");
    auto grid = Grid::create(g.at("dim").get<int>(), g.at("n").get<int>(), g.at("length").get<double>());
    return KgsState(field_from_json(grid, j.at("u"), "u"), field_from_json(grid, j.at("psi"), "psi"));
  } catch (const json::exception& e) {
    throw Error(std::string("state dump: ") + e.what());
  }
}

void save_state(const KgsState& state, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write " + tmp.string());
    out << state_to_json(state) << '\n';
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

KgsState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return state_from_json(ss.str());
}

}  // namespace kgs
