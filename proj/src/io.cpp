#include "morphlab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace morphlab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string format_scheme(Scheme s) { return s == Scheme::Etd1 ? "etd1" : "etdrk2"; }

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string RunConfig::canonical() const {
  std::map<std::string, std::string> kv;
  kv["d"] = format_double(params.d);
  for (int i = 0; i < 5; ++i) {
    kv["b" + std::to_string(i + 1)] = format_double(params.b[i]);
    kv["c" + std::to_string(i + 1)] = format_double(params.c[i]);
  }
  kv["p1"] = format_double(params.p[0]);
  kv["p3"] = format_double(params.p[2]);
  kv["h"] = format_double(h);
  kv["epsilon"] = format_double(epsilon);
  kv["n1"] = std::to_string(solver.n1);
  kv["n2"] = std::to_string(solver.n2);
  kv["dt"] = format_double(solver.dt);
  kv["T"] = format_double(solver.T);
  kv["scheme"] = format_scheme(solver.scheme);
  kv["dealias"] = solver.dealias ? "1" : "0";
  kv["theta"] = format_double(solver.theta);
  kv["p_exp"] = format_double(solver.p_exp);
  kv["seed"] = std::to_string(seed);
  kv["out_dir"] = out_dir;
  std::string s;
  for (const auto& [k, v] : kv) s += k + "=" + v + "\n";
  return s;
}

std::string RunConfig::hash() const {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical())));
  return buf;
}

namespace {

double parse_number(const std::string& v, int line) {
  std::size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(line, "cannot parse number '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError(line, "trailing characters in number '" + v + "'");
  return x;
}

long parse_integer(const std::string& v, int line) {
  std::size_t pos = 0;
  long x;
  try {
    x = std::stol(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(line, "cannot parse integer '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError(line, "trailing characters in integer '" + v + "'");
  return x;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const auto hash_pos = s.find('#');
    if (hash_pos != std::string::npos) s = s.substr(0, hash_pos);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected key=value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "empty key");
    if (val.empty()) throw ConfigError(line, "empty value for '" + key + "'");

    if (key == "d") cfg.params.d = parse_number(val, line);
    else if (key == "b1") cfg.params.b[0] = parse_number(val, line);
    else if (key == "b2") cfg.params.b[1] = parse_number(val, line);
    else if (key == "b3") cfg.params.b[2] = parse_number(val, line);
    else if (key == "b4") cfg.params.b[3] = parse_number(val, line);
    else if (key == "b5") cfg.params.b[4] = parse_number(val, line);
    else if (key == "c1") cfg.params.c[0] = parse_number(val, line);
    else if (key == "c2") cfg.params.c[1] = parse_number(val, line);
    else if (key == "c3") cfg.params.c[2] = parse_number(val, line);
    else if (key == "c4") cfg.params.c[3] = parse_number(val, line);
    else if (key == "c5") cfg.params.c[4] = parse_number(val, line);
    else if (key == "p1") cfg.params.p[0] = parse_number(val, line);
    else if (key == "p3") cfg.params.p[2] = parse_number(val, line);
    else if (key == "h") cfg.h = parse_number(val, line);
    else if (key == "epsilon") cfg.epsilon = parse_number(val, line);
    else if (key == "n1") cfg.solver.n1 = static_cast<int>(parse_integer(val, line));
    else if (key == "n2") cfg.solver.n2 = static_cast<int>(parse_integer(val, line));
    else if (key == "dt") cfg.solver.dt = parse_number(val, line);
    else if (key == "T") cfg.solver.T = parse_number(val, line);
    else if (key == "scheme") {
      if (val == "etd1") cfg.solver.scheme = Scheme::Etd1;
      else if (val == "etdrk2") cfg.solver.scheme = Scheme::EtdRk2;
      else throw ConfigError(line, "scheme must be etd1 or etdrk2");
    } else if (key == "dealias") {
      if (val == "0") cfg.solver.dealias = false;
      else if (val == "1") cfg.solver.dealias = true;
      else throw ConfigError(line, "dealias must be 0 or 1");
    } else if (key == "theta") cfg.solver.theta = parse_number(val, line);
    else if (key == "p_exp") cfg.solver.p_exp = parse_number(val, line);
    else if (key == "seed") cfg.seed = static_cast<unsigned long>(parse_integer(val, line));
    else if (key == "out_dir") cfg.out_dir = val;
    else throw ConfigError(line, "unknown key '" + key + "'");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string resolve_out_dir(const RunConfig& cfg) {
  if (const char* env = std::getenv("MORPHLAB_OUT"); env && *env) return env;
  return cfg.out_dir;
}

void write_snapshot(const std::string& path, const SnapshotMeta& meta,
                    const std::vector<double>& values) {
  std::size_t expected = 1;
  for (int s : meta.shape) expected *= static_cast<std::size_t>(s);
  if (values.size() != expected)
    throw std::invalid_argument("write_snapshot: shape does not match value count");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "# morphlab-snapshot v1\n";
  out << "# config_hash=" << meta.config_hash << "\n";
  out << "# component=" << meta.component << "\n";
  out << "# repr=" << meta.repr << "\n";
  out << "# shape=";
  for (std::size_t k = 0; k < meta.shape.size(); ++k)
    out << (k ? "," : "") << meta.shape[k];
  out << "\n";
  out << "# h=" << format_double(meta.h) << "\n";
  out << "# time=" << format_double(meta.time) << "\n";
  const int cols = meta.shape.size() == 2 ? meta.shape[1] : static_cast<int>(values.size());
  int c = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    out << format_double(values[k]);
    if (++c == cols) {
      out << "\n";
      c = 0;
    } else {
      out << ",";
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open snapshot: " + path);
  Snapshot snap;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const std::string body = line.substr(2);
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = body.substr(0, eq);
      const std::string val = body.substr(eq + 1);
      if (key == "component") snap.meta.component = val;
      else if (key == "repr") snap.meta.repr = val;
      else if (key == "config_hash") snap.meta.config_hash = val;
      else if (key == "h") snap.meta.h = std::stod(val);
      else if (key == "time") snap.meta.time = std::stod(val);
      else if (key == "shape") {
        snap.meta.shape.clear();
        std::istringstream ss(val);
        std::string tok;
        while (std::getline(ss, tok, ',')) snap.meta.shape.push_back(std::stoi(tok));
      }
      continue;
    }
    std::istringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) snap.values.push_back(std::stod(tok));
  }
  std::size_t expected = 1;
  for (int s : snap.meta.shape) expected *= static_cast<std::size_t>(s);
  if (snap.meta.shape.empty() || snap.values.size() != expected)
    throw std::runtime_error("snapshot shape mismatch in " + path);
  return snap;
}

void write_field(const std::string& path, const SpectralField1D& f,
                 const std::string& component, const std::string& config_hash,
                 double time) {
  SnapshotMeta meta;
  meta.component = component;
  meta.shape = {f.n()};
  meta.config_hash = config_hash;
  meta.time = time;
  write_snapshot(path, meta, f.a);
}

void write_field(const std::string& path, const SpectralField2D& f,
                 const std::string& component, const std::string& config_hash,
                 double h, double time) {
  SnapshotMeta meta;
  meta.component = component;
  meta.shape = {f.n1, f.n2};
  meta.config_hash = config_hash;
  meta.h = h;
  meta.time = time;
  write_snapshot(path, meta, f.a);
}

const char* const kTrajectoryHeader =
    "t,norm_z1_Z1,wnorm_z1_Z1plus,norm_z2,norm_z3_Lp,norm_z3_inf,norm_z4_Lp,"
    "norm_z5_Lp,min_u_all,ode_sum_max";

void write_trajectory_csv(const std::string& path, const std::vector<DiagRow>& rows,
                          const std::string& config_hash) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "# config_hash=" << config_hash << "\n";
  out << kTrajectoryHeader << "\n";
  for (const auto& r : rows) {
    out << format_double(r.t) << ',' << format_double(r.norm_z1_Z1) << ','
        << format_double(r.wnorm_z1_Z1plus) << ',' << format_double(r.norm_z2) << ','
        << format_double(r.norm_z3_Lp) << ',' << format_double(r.norm_z3_inf) << ','
        << format_double(r.norm_z4_Lp) << ',' << format_double(r.norm_z5_Lp) << ','
        << format_double(r.min_u_all) << ',' << format_double(r.ode_sum_max) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<DiagRow> read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory: " + path);
  std::vector<DiagRow> rows;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != kTrajectoryHeader)
        throw std::runtime_error("unexpected trajectory header in " + path);
      saw_header = true;
      continue;
    }
    std::istringstream ss(line);
    std::string tok;
    std::vector<double> v;
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
    if (v.size() != 10) throw std::runtime_error("bad trajectory row in " + path);
    DiagRow r;
    r.t = v[0];
    r.norm_z1_Z1 = v[1];
    r.wnorm_z1_Z1plus = v[2];
    r.norm_z2 = v[3];
    r.norm_z3_Lp = v[4];
    r.norm_z3_inf = v[5];
    r.norm_z4_Lp = v[6];
    r.norm_z5_Lp = v[7];
    r.min_u_all = v[8];
    r.ode_sum_max = v[9];
    rows.push_back(r);
  }
  return rows;
}

void write_rate_table_csv(const std::string& path, const RateTable& tab,
                          const std::string& config_hash) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "# config_hash=" << config_hash << "\n";
  out << tab.param_name;
  for (const auto& n : tab.column_names) out << ',' << n;
  out << "\n";
  for (std::size_t r = 0; r < tab.param.size(); ++r) {
    out << format_double(tab.param[r]);
    for (const auto& col : tab.columns) out << ',' << format_double(col[r]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_check_report_csv(const std::string& path, const CheckReport& rep) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "# report=" << rep.name << "\n";
  out << "# seed=" << rep.seed << "\n";
  out << "# tolerance=" << format_double(rep.tolerance) << "\n";
  out << "label,lhs,rhs,status\n";
  for (const auto& r : rep.rows) {
    out << r.label << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
        << (r.skipped ? "skipped" : (r.pass ? "pass" : "FAIL")) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace morphlab
