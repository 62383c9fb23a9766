#pragma once

#include <map>
#include <string>
#include <vector>

namespace klab {

// Result of one quantitative check. `anchor` is the inequality or identity
// being tested, written as a neutral formula string so reports are
// self-describing. `values` holds measured quantities, `bounds` the limits
// they were compared against. pass == true implies slack >= -tolerance.
struct CheckReport {
  std::string name;
  std::string anchor;
  std::map<std::string, double> values;
  std::map<std::string, double> bounds;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::string> notes;

  CheckReport() = default;
  CheckReport(std::string n, std::string a) : name(std::move(n)), anchor(std::move(a)) {}

  void note(std::string s) { notes.push_back(std::move(s)); }
  std::string summary_line() const;
};

std::string render_report_table(const std::vector<CheckReport>& reports);

}  // namespace klab
