// Copyright 2026 The dcube Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dcube/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dcube {

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : ValidationError(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty() || !std::isfinite(x))
    throw ValidationError("key '" + key + "' expects a number, got '" + v + "'");
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, x);
  if (v.empty() || r.ec != std::errc() || r.ptr != end)
    throw ValidationError("key '" + key + "' expects an integer, got '" + v + "'");
  return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, x);
  if (v.empty() || r.ec != std::errc() || r.ptr != end)
    throw ValidationError("key '" + key + "' expects an unsigned integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ValidationError("key '" + key + "' expects true or false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& s : split_list(v)) out.push_back(to_double(key, s));
  if (out.empty()) throw ValidationError("key '" + key + "' expects a non-empty list");
  return out;
}

std::vector<int> to_ints(const std::string& key, const std::string& v) {
  std::vector<int> out;
  if (trim(v).empty()) return out;
  for (const auto& s : split_list(v)) out.push_back(static_cast<int>(to_int(key, s)));
  return out;
}

std::string one_of(const std::string& key, const std::string& v, std::initializer_list<const char*> allowed) {
  std::string list;
  for (const char* a : allowed) {
    if (v == a) return v;
    list += list.empty() ? a : std::string(" | ") + a;
  }
  throw ValidationError("key '" + key + "' expects " + list + ", got '" + v + "'");
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_floating_point_v<T>) {
      s += fmt(v[i]);
    } else {
      s += std::to_string(v[i]);
    }
  }
  return s;
}

}  // namespace

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "method") c.method = one_of(key, v, {"exact", "stochastic", "dcube", "iqp-dist"});
  else if (key == "lindbladian") c.lindbladian = one_of(key, v, {"eph", "fermion"});
  else if (key == "initial") c.initial = one_of(key, v, {"fock", "ground"});
  else if (key == "sites") c.model.sites = static_cast<int>(to_int(key, v));
  else if (key == "J") c.model.J = to_double(key, v);
  else if (key == "U") c.model.U = to_double(key, v);
  else if (key == "omega") c.model.omega = to_doubles(key, v);
  else if (key == "g") c.model.g = to_doubles(key, v);
  else if (key == "n_b") c.model.n_b = static_cast<int>(to_int(key, v));
  else if (key == "spinful") c.model.spinful = to_bool(key, v);
  else if (key == "occupied") c.model.occupied_modes = to_ints(key, v);
  else if (key == "t_max") c.t_max = to_double(key, v);
  else if (key == "n_points") c.n_points = static_cast<int>(to_int(key, v));
  else if (key == "trotter_n") c.trotter_n = static_cast<int>(to_int(key, v));
  else if (key == "n_rho") c.n_rho = static_cast<int>(to_int(key, v));
  else if (key == "n_eta") c.n_eta = static_cast<int>(to_int(key, v));
  else if (key == "order") c.order = static_cast<int>(to_int(key, v));
  else if (key == "samples") {
    const long long n = to_int(key, v);
    if (n < 1) throw ValidationError("key 'samples' must be >= 1");
    c.samples = static_cast<std::size_t>(n);
  } else if (key == "seed") c.seed = to_u64(key, v);
  else if (key == "threads") c.threads = static_cast<int>(to_int(key, v));
  else if (key == "density_sites") c.density_sites = to_ints(key, v);
  else if (key == "gf_site") c.gf_site = static_cast<int>(to_int(key, v));
  else if (key == "gf_spin") c.gf_spin = static_cast<int>(to_int(key, v));
  else if (key == "gamma_sampler") c.gamma_sampler = one_of(key, v, {"circuit", "exact"});
  else if (key == "time") c.time = to_double(key, v);
  else if (key == "n_b_list") c.n_b_list = to_ints(key, v);
  else if (key == "window") c.window = one_of(key, v, {"none", "hann"});
  else if (key == "output") c.output = v;
  else throw ValidationError("unknown key '" + key + "'");
}

void ExperimentConfig::validate() const {
  model.validate();
  if (n_points < 1) throw ValidationError("n_points must be >= 1");
  if (!(t_max >= 0.0)) throw ValidationError("t_max must be >= 0");
  if (trotter_n < 1) throw ValidationError("trotter_n must be >= 1");
  if (n_rho < 0 || n_eta < 0) throw ValidationError("n_rho and n_eta must be >= 0 (0 selects the default)");
  if (order != 1 && order != 2) throw ValidationError("order must be 1 or 2");
  if (samples < 1) throw ValidationError("samples must be >= 1");
  if (threads < 1) throw ValidationError("threads must be >= 1");
  if (!(time >= 0.0)) throw ValidationError("time must be >= 0");
  for (int s : density_sites)
    if (s < 0 || s >= model.sites) throw ValidationError("density_sites entry out of range");
  if (gf_site < 0 || gf_site >= model.sites) throw ValidationError("gf_site out of range");
  if (gf_spin < 0 || gf_spin > (model.spinful ? 1 : 0)) throw ValidationError("gf_spin out of range");
  for (int nb : n_b_list)
    if (nb < 2) throw ValidationError("n_b_list entries must be >= 2");
}

std::vector<double> ExperimentConfig::time_grid() const {
  std::vector<double> t(static_cast<std::size_t>(n_points));
  if (n_points == 1) {
    t[0] = t_max;
    return t;
  }
  for (int i = 0; i < n_points; ++i) t[i] = t_max * i / (n_points - 1);
  return t;
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  ExperimentConfig cfg;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source, number, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(source, number, "empty key");
    try {
      apply_setting(cfg, key, line.substr(eq + 1));
    } catch (const ConfigError&) {
      throw;
    } catch (const ValidationError& e) {
      throw ConfigError(source, number, e.what());
    }
  }
  // Cross-key checks need the whole file, so they carry no line number.
  try {
    cfg.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

std::string to_config_text(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "method = " << c.method << "\n"
     << "lindbladian = " << c.lindbladian << "\n"
     << "initial = " << c.initial << "\n"
     << "sites = " << c.model.sites << "\n"
     << "J = " << fmt(c.model.J) << "\n"
     << "U = " << fmt(c.model.U) << "\n"
     << "omega = " << join(c.model.omega) << "\n"
     << "g = " << join(c.model.g) << "\n"
     << "n_b = " << c.model.n_b << "\n"
     << "spinful = " << (c.model.spinful ? "true" : "false") << "\n"
     << "occupied = " << join(c.model.occupied_modes) << "\n"
     << "t_max = " << fmt(c.t_max) << "\n"
     << "n_points = " << c.n_points << "\n"
     << "trotter_n = " << c.trotter_n << "\n"
     << "n_rho = " << c.n_rho << "\n"
     << "n_eta = " << c.n_eta << "\n"
     << "order = " << c.order << "\n"
     << "samples = " << c.samples << "\n"
     << "seed = " << c.seed << "\n"
     << "threads = " << c.threads << "\n"
     << "density_sites = " << join(c.density_sites) << "\n"
     << "gf_site = " << c.gf_site << "\n"
     << "gf_spin = " << c.gf_spin << "\n"
     << "gamma_sampler = " << c.gamma_sampler << "\n"
     << "time = " << fmt(c.time) << "\n"
     << "n_b_list = " << join(c.n_b_list) << "\n"
     << "window = " << c.window << "\n";
  if (!c.output.empty()) os << "output = " << c.output << "\n";
  return os.str();
}

}  // namespace dcube
