// Run-configuration parsing and deterministic plain-text serialization of
// fields, trajectories and study tables. Everything is decimal text at 17
// significant digits so doubles round-trip exactly and outputs diff cleanly;
// every file carries a hash of the generating configuration in its header.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "morphlab/evolution.hpp"
#include "morphlab/verification.hpp"

namespace morphlab {

// ---------------------------------------------------------------------------
// Run configuration (flat key=value text)
// ---------------------------------------------------------------------------

struct RunConfig {
  ModelParams params;
  double h = 1.0;
  double epsilon = 0.2;
  SolverConfig solver;
  unsigned long seed = 1;
  std::string out_dir = "out";

  // Canonical "key=value\n" listing (sorted keys) and its FNV-1a hash.
  std::string canonical() const;
  std::string hash() const;
};

struct ConfigError : std::runtime_error {
  int line;
  ConfigError(int line_, const std::string& msg)
      : std::runtime_error("config line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

// Parses the flat key=value format. Unknown keys are rejected with the
// offending line number; '#' starts a comment. Keys: d, b1..b5, c1..c5,
// p1, p3, h, epsilon, n1, n2, dt, T, scheme (etd1|etdrk2), dealias (0|1),
// theta, p_exp, seed, out_dir. Missing keys keep their defaults.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// Resolved output directory: MORPHLAB_OUT environment variable wins.
std::string resolve_out_dir(const RunConfig& cfg);

// ---------------------------------------------------------------------------
// Snapshots (header lines "# key=value", then row-major decimal values)
// ---------------------------------------------------------------------------

struct SnapshotMeta {
  std::string component;           // e.g. "u1", "m_mu"
  std::string repr = "coeffs";     // "coeffs" or "samples"
  std::vector<int> shape;          // {n1} or {n1, n2}
  double h = 1.0;
  double time = 0.0;
  std::string config_hash;
};

void write_snapshot(const std::string& path, const SnapshotMeta& meta,
                    const std::vector<double>& values);

struct Snapshot {
  SnapshotMeta meta;
  std::vector<double> values;
};

Snapshot read_snapshot(const std::string& path);

void write_field(const std::string& path, const SpectralField1D& f,
                 const std::string& component, const std::string& config_hash,
                 double time = 0.0);
void write_field(const std::string& path, const SpectralField2D& f,
                 const std::string& component, const std::string& config_hash,
                 double h = 1.0, double time = 0.0);

// ---------------------------------------------------------------------------
// Trajectory and study tables (CSV with a hash header)
// ---------------------------------------------------------------------------

// Fixed 10-column schema:
// t,norm_z1_Z1,wnorm_z1_Z1plus,norm_z2,norm_z3_Lp,norm_z3_inf,norm_z4_Lp,
// norm_z5_Lp,min_u_all,ode_sum_max
extern const char* const kTrajectoryHeader;

void write_trajectory_csv(const std::string& path, const std::vector<DiagRow>& rows,
                          const std::string& config_hash);
std::vector<DiagRow> read_trajectory_csv(const std::string& path);

void write_rate_table_csv(const std::string& path, const RateTable& tab,
                          const std::string& config_hash);

void write_check_report_csv(const std::string& path, const CheckReport& rep);

// 17-significant-digit decimal rendering used by all writers.
std::string format_double(double v);

}  // namespace morphlab
