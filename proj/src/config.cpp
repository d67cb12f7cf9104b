#include "kgs/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace kgs {

using nlohmann::json;

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error(what + ": empty entry in '" + text + "'");
    item = item.substr(b, e - b + 1);
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end != item.c_str() + item.size() || !std::isfinite(v))
      throw Error(what + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw Error(what + ": empty list");
  return out;
}

std::pair<int, int> parse_dyadic_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error("tau-dyadic: expected jmin:jmax, got '" + text + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
    const int jmin = std::stoi(a, &p1);
    const int jmax = std::stoi(b, &p2);
    if (p1 != a.size() || p2 != b.size()) throw std::invalid_argument("trailing");
    if (jmin > jmax || jmin < 0 || jmax > 40) throw Error("tau-dyadic: need 0 <= jmin <= jmax <= 40");
    return {jmin, jmax};
  } catch (const std::logic_error&) {
    throw Error("tau-dyadic: expected jmin:jmax, got '" + text + "'");
  }
}

namespace {

std::vector<double> number_list(const json& v, const std::string& key) {
  if (v.is_number()) return {v.get<double>()};
  if (v.is_string()) return parse_number_list(v.get<std::string>(), "config key '" + key + "'");
  if (!v.is_array() || v.empty()) throw Error("config key '" + key + "': expected a non-empty list of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw Error("config key '" + key + "': expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

template <class T>
T typed(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw Error("config key '" + key + "': wrong type");
  }
}

}  // namespace

RunConfig apply_config_json(const std::string& text, RunConfig cfg) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw Error("config: top level must be an object");
  static const std::set<std::string> known{"scheme", "c",       "tau",    "tau_dyadic", "n",       "dim", "T",
                                           "theta_psi", "theta_z", "seed", "norm_r",     "dealias", "out"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) throw Error("config: unknown key '" + key + "'");

  for (const auto& [key, v] : doc.items()) {
    if (key == "scheme") cfg.scheme = parse_scheme(typed<std::string>(v, key));
    else if (key == "c") cfg.c_list = number_list(v, key);
    else if (key == "tau_dyadic") {
      if (v.is_string()) cfg.tau_dyadic = parse_dyadic_range(v.get<std::string>());
      else if (v.is_array() && v.size() == 2) cfg.tau_dyadic = {typed<int>(v[0], key), typed<int>(v[1], key)};
      else throw Error("config key 'tau_dyadic': expected \"jmin:jmax\" or [jmin, jmax]");
      cfg.tau_list.clear();
    }
    else if (key == "n") cfg.n = typed<int>(v, key);
    else if (key == "dim") cfg.dim = typed<int>(v, key);
    else if (key == "T") cfg.T = typed<double>(v, key);
    else if (key == "theta_psi") cfg.theta_psi = typed<double>(v, key);
    else if (key == "theta_z") cfg.theta_z = typed<double>(v, key);
    else if (key == "seed") cfg.seed = typed<std::uint64_t>(v, key);
    else if (key == "norm_r") cfg.norm_r = typed<double>(v, key);
    else if (key == "dealias") cfg.dealias = typed<bool>(v, key);
    else if (key == "out") cfg.out_dir = typed<std::string>(v, key);
  }
  // explicit steps win over tau_dyadic; an empty list (as echoed by config_json) defers to it
  if (doc.contains("tau")) {
    const json& v = doc["tau"];
    if (v.is_array() && v.empty()) cfg.tau_list.clear();
    else cfg.tau_list = number_list(v, "tau");
  }
  return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return apply_config_json(ss.str(), std::move(base));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string config_json(const RunConfig& cfg) {
  json j;
  j["scheme"] = to_string(cfg.scheme);
  j["c"] = cfg.c_list;
  j["tau"] = cfg.tau_list;
  j["tau_dyadic"] = {cfg.tau_dyadic.first, cfg.tau_dyadic.second};
  j["n"] = cfg.n;
  j["dim"] = cfg.dim;
  j["T"] = cfg.T;
  j["theta_psi"] = cfg.theta_psi;
  j["theta_z"] = cfg.theta_z;
  j["seed"] = cfg.seed;
  j["norm_r"] = cfg.norm_r;
  j["dealias"] = cfg.dealias;
  j["out"] = cfg.out_dir.string();
  return j.dump();
}

}  // namespace kgs
