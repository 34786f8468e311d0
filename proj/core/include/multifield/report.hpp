#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace multifield {

// Round-trippable decimal form (%.17g); every number we persist goes
// through this so reruns under a fixed seed are byte-identical.
std::string g17(double v);

// One residual sample: a named check evaluated at a time (or at refinement
// level `level` when sweeping a ladder).
struct ResidualRow {
  double time = 0.0;
  std::string check;
  double norm = 0.0;
  int level = 0;
};

// One audited identity: measured value against its pinned tolerance.
struct AuditRow {
  std::string check;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

void write_residual_csv(std::ostream& os,
                        const std::vector<ResidualRow>& rows);
void write_audit_csv(std::ostream& os, const std::vector<AuditRow>& rows);
void write_residual_csv(const std::filesystem::path& path,
                        const std::vector<ResidualRow>& rows);
void write_audit_csv(const std::filesystem::path& path,
                     const std::vector<AuditRow>& rows);

// Least-squares slope of log(err) against log(h) over a refinement ladder.
// Pairs with non-positive error are dropped (already at round-off); if
// fewer than two pairs survive the ladder has fully converged and the
// order is reported as +inf.
double fitted_order(const std::vector<double>& h,
                    const std::vector<double>& err);

// Where run artifacts go: the MFIELD_OUTPUT_DIR environment variable when
// set, the fallback otherwise.  Created on demand.
std::filesystem::path resolve_output_dir(const std::string& fallback);

}  // namespace multifield
