#include "qumode/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qm {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw validation_error("config: bad numeric value for '" + key + "': " + v);
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long out = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw validation_error("config: bad integer value for '" + key + "': " + v);
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw validation_error("config line " + std::to_string(lineno) +
                             ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw validation_error("config line " + std::to_string(lineno) +
                             ": empty key or value");
    if (key == "experiment") {
      cfg.experiment = val;
    } else if (key == "n_q") {
      cfg.n_q = int(to_long(key, val));
    } else if (key == "mu") {
      cfg.mu = to_double(key, val);
    } else if (key == "n") {
      cfg.fock_n = int(to_long(key, val));
    } else if (key == "N_b") {
      cfg.N_b = int(to_long(key, val));
    } else if (key == "eps") {
      cfg.eps = to_double(key, val);
    } else if (key == "sigma") {
      cfg.sigma = to_double(key, val);
    } else if (key == "oversample") {
      cfg.oversample = int(to_long(key, val));
    } else if (key == "seed") {
      cfg.seed = std::uint64_t(to_long(key, val));
    } else if (key == "output") {
      cfg.output = val;
    } else if (key == "r_min") {
      cfg.r_min = to_double(key, val);
    } else if (key == "r_max") {
      cfg.r_max = to_double(key, val);
    } else if (key == "r_points") {
      cfg.r_points = int(to_long(key, val));
    } else {
      throw validation_error("config line " + std::to_string(lineno) +
                             ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw validation_error("cannot open " + tmp + " for writing");
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) throw validation_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw validation_error("rename failed for " + path);
}

}  // namespace qm
