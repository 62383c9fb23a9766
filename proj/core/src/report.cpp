#include "klab/report.hpp"

#include <iomanip>
#include <sstream>

namespace klab {

std::string CheckReport::summary_line() const {
  std::ostringstream os;
  os << (pass ? "[PASS] " : "[FAIL] ") << name << "  (" << anchor << ")";
  return os.str();
}

std::string render_report_table(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << r.summary_line() << "\n";
    for (const auto& [k, v] : r.values)
      os << "    " << std::left << std::setw(28) << k << std::setprecision(12) << v << "\n";
    for (const auto& [k, v] : r.bounds)
      os << "    " << std::left << std::setw(28) << ("bound: " + k) << std::setprecision(12) << v
         << "\n";
    for (const auto& n : r.notes) os << "    note: " << n << "\n";
  }
  return os.str();
}

}  // namespace klab
