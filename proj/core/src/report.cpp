#include "multifield/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>

#include "multifield/errors.hpp"

namespace multifield {

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_residual_csv(std::ostream& os,
                        const std::vector<ResidualRow>& rows) {
  os << "time,check,norm,level\n";
  for (const ResidualRow& r : rows)
    os << g17(r.time) << ',' << r.check << ',' << g17(r.norm) << ','
       << r.level << '\n';
}

void write_audit_csv(std::ostream& os, const std::vector<AuditRow>& rows) {
  os << "check,value,tolerance,pass\n";
  for (const AuditRow& r : rows)
    os << r.check << ',' << g17(r.value) << ',' << g17(r.tolerance) << ','
       << (r.pass ? "pass" : "fail") << '\n';
}

namespace {

std::ofstream open_or_throw(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os)
    throw ConfigError("cannot open '" + path.string() + "' for writing");
  return os;
}

}  // namespace

void write_residual_csv(const std::filesystem::path& path,
                        const std::vector<ResidualRow>& rows) {
  std::ofstream os = open_or_throw(path);
  write_residual_csv(os, rows);
}

void write_audit_csv(const std::filesystem::path& path,
                     const std::vector<AuditRow>& rows) {
  std::ofstream os = open_or_throw(path);
  write_audit_csv(os, rows);
}

double fitted_order(const std::vector<double>& h,
                    const std::vector<double>& err) {
  std::vector<double> lh, le;
  for (size_t i = 0; i < h.size() && i < err.size(); ++i) {
    if (err[i] <= 0.0) continue;
    lh.push_back(std::log(h[i]));
    le.push_back(std::log(err[i]));
  }
  const size_t n = lh.size();
  if (n < 2) return std::numeric_limits<double>::infinity();
  double mh = 0.0, me = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mh += lh[i];
    me += le[i];
  }
  mh /= static_cast<double>(n);
  me /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < n; ++i) {
    num += (lh[i] - mh) * (le[i] - me);
    den += (lh[i] - mh) * (lh[i] - mh);
  }
  return num / den;
}

std::filesystem::path resolve_output_dir(const std::string& fallback) {
  const char* env = std::getenv("MFIELD_OUTPUT_DIR");
  std::filesystem::path dir = env && *env ? env : fallback.c_str();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + dir.string() +
                      "': " + ec.message());
  return dir;
}

}  // namespace multifield
